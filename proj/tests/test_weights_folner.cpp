#include <doctest.h>

#include "wamen/error.hpp"
#include "wamen/folner.hpp"
#include "wamen/weights.hpp"

using namespace wamen;

namespace {

VertexSet interval(const LabeledGraph& z, int lo, int hi) {
  std::vector<VertexId> out;
  for (int i = lo; i <= hi; ++i) out.push_back(z.at(std::to_string(i)));
  return VertexSet(out);
}

VertexSet square(const LabeledGraph& z2, int n) {
  std::vector<VertexId> out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out.push_back(*z2.lattice_vertex(std::vector<int>{x, y}));
  return VertexSet(out);
}

}  // namespace

TEST_CASE("ball weight on F2 levels the spheres") {
  auto f2 = build_free_window(2, 4);
  const VertexId e = f2.at("e");
  auto w1 = ball_weight(f2, e, 1);
  CHECK(w1(e) == 4);
  CHECK(w1(f2.at("a")) == 1);
  CHECK(balancedness(f2, w1).constant == 4);
  for (int r = 0; r <= 3; ++r) {
    auto w = ball_weight(f2, e, r);
    auto layers = spheres(f2, e, r);
    for (const auto& s : layers) CHECK(total_weight(w, s) == Rational(static_cast<unsigned long>(layers.back().size())));
    CHECK(w(f2.at("aaaa")) == 1);
  }
  CHECK_THROWS_AS(ball_weight(f2, e, 4), PreconditionError);
}

TEST_CASE("balancedness and cocycle") {
  auto z = build_lattice_window(1, 5);
  auto w = exponential_weights(z, 0, 2);
  CHECK(w(z.at("3")) == 8);
  CHECK(w(z.at("-2")) == Rational(1, 4));
  auto bal = balancedness(z, w);
  CHECK(bal.constant == 2);
  CHECK(is_balanced_with(z, w, 2));
  CHECK_FALSE(is_balanced_with(z, w, Rational(3, 2)));
  CHECK(cocycle(z, w, parse_word("+1,+1", z.generators()), z.at("0")) == 4);
  CHECK_THROWS_AS(cocycle(z, w, parse_word("+1", z.generators()), z.at("5")), PreconditionError);
  CHECK(balancedness(z, WeightFunction::unit(z)).constant == 1);
  CHECK_THROWS_AS(WeightFunction(std::vector<Rational>{1, 0}, 1), InvariantError);
}

TEST_CASE("random weights are reproducible and bounded") {
  auto a = random_weights(50, 9), b = random_weights(50, 9), c = random_weights(50, 10);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  for (const auto& q : a.values()) {
    CHECK(q > 0);
    CHECK(q.get_den() <= 16);
  }
}

TEST_CASE("composed ball weights need disjoint neighborhoods") {
  auto z = build_lattice_window(1, 20);
  auto w = compose_ball_weights(z, {{z.at("-8"), 2}, {z.at("8"), 3}});
  CHECK(w(z.at("-8")) == 2);
  CHECK(w(z.at("8")) == 2);
  CHECK(w(z.at("0")) == 1);
  CHECK_THROWS_AS(compose_ball_weights(z, {{z.at("0"), 2}, {z.at("5"), 2}}), PreconditionError);
}

TEST_CASE("even partition of a ball") {
  auto f2 = build_free_window(2, 4);
  const VertexId e = f2.at("e");
  auto w = ball_weight(f2, e, 3);
  const Rational whole = total_weight(w, ball(f2, e, 3));
  for (int k : {1, 2, 3, 4}) {
    auto parts = even_partition(f2, e, 3, w, k);
    CHECK(parts.size() == static_cast<std::size_t>(k));
    VertexSet all;
    for (const auto& p : parts) {
      CHECK(total_weight(w, p) < make_rational(2, k) * whole);
      CHECK(set_intersection(all, p).empty());
      all = set_union(all, p);
    }
    CHECK(all == ball(f2, e, 3));
  }
  // The heavy center alone outweighs a fifth of the ball.
  CHECK_THROWS_AS(even_partition(f2, e, 1, ball_weight(f2, e, 1), 5), InfeasibleError);
}

TEST_CASE("Følner defect of boxes") {
  auto z = build_lattice_window(1, 60);
  auto unit = WeightFunction::unit(z);
  auto gens = generator_words(z.generators());
  for (int n = 1; n <= 50; ++n) CHECK(folner_defect(z, unit, interval(z, 0, n - 1), gens).defect == Rational(1, n));

  auto z2 = build_lattice_window(2, 14);
  auto unit2 = WeightFunction::unit(z2);
  for (int n = 1; n <= 6; ++n) {
    auto report = folner_defect(z2, unit2, square(z2, n), generator_words(z2.generators()));
    for (const auto& r : report.ratios) CHECK(r - 1 == Rational(1, n));
  }
  CHECK(folner_defect(z, unit, interval(z, 0, 4), {Word{}}).defect == 0);
  CHECK_THROWS_AS(folner_defect(z, unit, interval(z, 55, 60), gens), PreconditionError);
  CHECK_THROWS_AS(folner_defect(z, unit, VertexSet{}, gens), PreconditionError);
}

TEST_CASE("Følner defect under exponential weights stays large") {
  auto z = build_lattice_window(1, 30);
  auto w = exponential_weights(z, 0, 2);
  auto gens = generator_words(z.generators());
  for (int n = 1; n <= 20; ++n) CHECK(folner_defect(z, w, interval(z, 0, n - 1), gens).defect >= Rational(1, 2));
}

TEST_CASE("Følner search picks the best shape") {
  auto z = build_lattice_window(1, 6);
  auto found = folner_search(z, WeightFunction::unit(z), generator_words(z.generators()));
  CHECK(found.best.defect == Rational(1, 11));
  CHECK(found.best.set.size() == 11);
  auto f2 = build_free_window(2, 3);
  auto balls = folner_search(f2, WeightFunction::unit(f2), generator_words(f2.generators()));
  CHECK(balls.best.defect > Rational(1, 2));
}

TEST_CASE("stage means") {
  auto z = build_lattice_window(1, 1010);
  auto unit = WeightFunction::unit(z);
  std::vector<VertexId> evens;
  for (VertexId v = 0; v < z.num_vertices(); ++v)
    if (z.coords(v)[0] % 2 == 0) evens.push_back(v);
  const VertexSet a(evens);
  const Word plus = parse_word("+1", z.generators());
  for (int n : {1, 2, 3, 10, 101}) {
    StageMean mean(interval(z, 0, n - 1), unit);
    CHECK(mean(a) == make_rational((n + 1) / 2, n));
    CHECK(invariance_defect(z, mean, a, plus) <= Rational(1, n));
    CHECK(uniform_invariance_defect(z, mean, plus) == Rational(1, n));
    CHECK(symmetric_difference_ratio(z, mean, plus) == make_rational(2, n));
  }
  StageMean mean(interval(z, 0, 9), unit);
  CHECK(mean(z.all_vertices()) == 1);
  CHECK(mean(VertexSet{}) == 0);
  // finite additivity on disjoint sets
  CHECK(mean(interval(z, -3, 4)) + mean(interval(z, 5, 20)) == mean(interval(z, -3, 20)));
}

TEST_CASE("stage series reports extremes") {
  auto z = build_lattice_window(1, 40);
  auto unit = WeightFunction::unit(z);
  std::vector<VertexSet> stages;
  for (int n : {2, 4, 8, 16}) stages.push_back(interval(z, 0, n - 1));
  auto series = stage_series(z, {std::cref(unit)}, stages, generator_words(z.generators()));
  CHECK(series.max_defect == Rational(1, 2));
  CHECK(series.min_defect == Rational(1, 16));
  CHECK(series.tail_max_defect == Rational(1, 8));
}
