#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wamen/compression.hpp"
#include "wamen/error.hpp"
#include "wamen/max_flow.hpp"

using namespace wamen;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == -4);
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(to_string(make_rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
  CHECK_THROWS_AS(parse_positive_rational("0"), Error);
}

TEST_CASE("exp(-n) bound is a certified upper bound") {
  for (unsigned n = 1; n <= 30; ++n) {
    Rational b = exp_neg_upper_bound(n);
    // e^n <= sum_{j<=m} n^j/j! + 2 n^{m+1}/(m+1)! once m + 2 >= 2n
    const unsigned m = 2 * n;
    Rational term = 1, upper = 0;
    for (unsigned j = 0; j <= m; ++j) {
      upper += term;
      term *= Rational(n, j + 1);
    }
    upper += 2 * term;
    CHECK(b >= 1 / upper);
    CHECK(b.get_d() <= std::exp(-static_cast<double>(n)) * (1 + 1e-9));
  }
}

TEST_CASE("tiling probability numerator is the smallest valid one") {
  const Integer two64 = Integer(1) << 64;
  for (unsigned n : {2u, 3u, 10u, 100u})
    for (unsigned b : {1u, 2u, 36u, 400u}) {
      Integer p = folner_probability_numerator(n, b);
      // n (2^64 - P)^b <= (n - 1) 2^{64 b}, and fails for P - 1
      auto ok = [&](const Integer& q) {
        Integer lhs, rhs, base = two64 - q;
        mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), b);
        mpz_pow_ui(rhs.get_mpz_t(), two64.get_mpz_t(), b);
        return n * lhs <= (n - 1) * rhs;
      };
      CHECK(ok(p));
      CHECK_FALSE(ok(p - 1));
      double exact = 1 - std::pow(1 - 1.0 / n, 1.0 / b);
      CHECK(std::abs(Rational(p, two64).get_d() - exact) < 1e-12);
    }
  CHECK(folner_probability_numerator(1, 5) == two64);
}

TEST_CASE("max flow on a small network") {
  FlowNetwork net(4);
  auto a = net.add_arc(0, 1, 3);
  auto b = net.add_arc(0, 2, 2);
  net.add_arc(1, 2, 5);
  auto c = net.add_arc(1, 3, 2);
  auto d = net.add_arc(2, 3, 3);
  CHECK(net.solve(0, 3) == 5);
  CHECK(net.flow(a) + net.flow(b) == 5);
  CHECK(net.flow(c) + net.flow(d) == 5);
  auto reach = net.residual_reachable(0);
  CHECK(reach[0]);
  CHECK_FALSE(reach[3]);
}

TEST_CASE("F2 has a compression system and Z has a cut witness") {
  auto f2 = build_free_window(2, 4);
  SolveOptions opts;
  auto outcome = solve_compression(f2, WeightFunction::unit(f2), opts);
  REQUIRE(std::holds_alternative<CompressionOutcome>(outcome));
  const auto& comp = std::get<CompressionOutcome>(outcome);
  CHECK(comp.check.valid);
  CHECK(verify_compression(comp.system, f2, WeightFunction::unit(f2)).valid);

  auto z = build_lattice_window(1, 30);
  auto unit = WeightFunction::unit(z);
  for (int k = 1; k <= 3; ++k) {
    opts.transport.k = k;
    auto zo = solve_compression(z, unit, opts);
    REQUIRE(std::holds_alternative<CutOutcome>(zo));
    const auto& cut = std::get<CutOutcome>(zo);
    CHECK(cut.witness.lhs > cut.witness.rhs);
    CHECK(verify_cut(cut.witness, z, unit, cut.instance.words, Rational(1, 2)));
    CHECK(doubling_check(z, unit, cut.witness.suppliers, k).ratio <= 2);
  }

  opts.transport.k = 1;
  auto zexp = solve_compression(z, exponential_weights(z, 0, 2), opts);
  CHECK(std::holds_alternative<CompressionOutcome>(zexp));
}

TEST_CASE("strict mode finds loads below one half on F2") {
  auto f2 = build_free_window(2, 5);
  SolveOptions opts;
  opts.strict = true;
  auto outcome = solve_compression(f2, WeightFunction::unit(f2), opts);
  REQUIRE(std::holds_alternative<CompressionOutcome>(outcome));
  const auto& comp = std::get<CompressionOutcome>(outcome);
  CHECK(comp.check.strict);
  CHECK(comp.check.min_slack > 0);
}

TEST_CASE("a tampered compression system is rejected") {
  auto f2 = build_free_window(2, 4);
  auto unit = WeightFunction::unit(f2);
  auto comp = std::get<CompressionOutcome>(solve_compression(f2, unit, {}));
  auto broken = comp.system;
  auto it = broken.psi.begin();
  it->second += Rational(1, 7);
  CHECK_FALSE(verify_compression(broken, f2, unit).valid);
  broken = comp.system;
  broken.psi.begin()->second = -1;
  CHECK_FALSE(verify_compression(broken, f2, unit).valid);
}

TEST_CASE("the mean pairing gap is bounded by the boundary term") {
  auto f2 = build_free_window(2, 5);
  auto unit = WeightFunction::unit(f2);
  auto comp = std::get<CompressionOutcome>(solve_compression(f2, unit, {}));
  for (int r = 0; r <= 4; ++r) {
    auto p = pair_with_stage(comp.system, f2, unit, ball(f2, f2.at("e"), r));
    CHECK(p.total == 1);
    CHECK(p.pulled <= Rational(1, 2));
    CHECK(p.total - p.pulled <= p.boundary);
    CHECK(p.boundary >= Rational(1, 2));
  }
}

TEST_CASE("transport feasibility matches Hall enumeration on random windows") {
  std::mt19937_64 rng(2024);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 2);
    LabeledGraph g = trial % 3 == 0 ? build_lattice_window(1, 2 + static_cast<int>(rng() % 4))
                     : trial % 3 == 1 ? build_free_window(2, k + 1)
                                      : oracle::random_schreier(rng, 8 + rng() % 8, 2, 0.8);
    auto w = random_weights(g.num_vertices(), rng(), 16, 32);
    auto deep = oracle::deep_vertices(g, k);
    if (deep.empty() || deep.size() > 12) continue;
    TransportOptions opts;
    opts.k = k;
    auto inst = build_transport(g, w, opts);
    CHECK(inst.suppliers == VertexSet(deep));
    auto flow = max_flow(inst);
    const bool hall = oracle::hall_holds(g, w, deep, k, Rational(1, 2));
    CHECK(flow.feasible == hall);
    if (flow.feasible) {
      ++feasible;
      CHECK(verify_compression(extract_compression(flow, inst, w), g, w).valid);
    } else {
      ++infeasible;
      auto cut = min_cut_witness(inst, flow, g, w);
      CHECK(cut.lhs > cut.rhs);
      CHECK(verify_cut(cut, g, w, inst.words, Rational(1, 2)));
      // max-flow = min-cut: value equals supply outside L plus capacity of K
      Rational cut_value = total_weight(w, VertexSet(deep)) - cut.lhs + cut.rhs;
      CHECK(flow.value == cut_value);
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("transport preconditions") {
  auto z = build_lattice_window(1, 1);
  TransportOptions opts;
  opts.k = 2;
  CHECK_THROWS_AS(build_transport(z, WeightFunction::unit(z), opts), PreconditionError);
}
