#include "wamen/weights.hpp"

#include <random>
#include <set>

#include "wamen/error.hpp"

namespace wamen {

WeightFunction::WeightFunction(std::size_t n, Rational default_value)
    : values_(n, default_value), default_(std::move(default_value)) {
  if (sgn(default_) <= 0) throw InvariantError("default weight must be positive");
}

WeightFunction::WeightFunction(std::vector<Rational> values, Rational default_value)
    : values_(std::move(values)), default_(std::move(default_value)) {
  if (sgn(default_) <= 0) throw InvariantError("default weight must be positive");
  for (std::size_t v = 0; v < values_.size(); ++v)
    if (sgn(values_[v]) <= 0) throw InvariantError("weight of vertex " + std::to_string(v) + " is not positive");
}

void WeightFunction::set(VertexId v, Rational value) {
  if (sgn(value) <= 0) throw InvariantError("weights must be positive");
  values_.at(v) = std::move(value);
}

WeightFunction exponential_weights(const LabeledGraph& g, int axis, const Rational& base) {
  if (g.family().kind != Family::Kind::lattice) throw PreconditionError("exponential weights need a lattice window");
  if (axis < 0 || axis >= g.family().dim) throw PreconditionError("axis out of range");
  if (sgn(base) <= 0) throw InvariantError("base must be positive");
  std::vector<Rational> values(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    int e = g.coords(v)[axis];
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    Rational q = e >= 0 ? Rational(num, den) : Rational(den, num);
    q.canonicalize();
    values[v] = q;
  }
  return WeightFunction(std::move(values), Rational(1));
}

WeightFunction random_weights(std::size_t n, std::uint64_t seed, unsigned max_den, unsigned max_num) {
  if (max_den == 0 || max_num == 0) throw PreconditionError("random weight bounds must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Rational> values(n);
  for (auto& q : values) {
    unsigned long p = 1 + rng() % max_num;
    unsigned long d = 1 + rng() % max_den;
    q = Rational(p, d);
    q.canonicalize();
  }
  return WeightFunction(std::move(values), Rational(1));
}

Rational total_weight(const WeightFunction& w, const VertexSet& set) {
  Rational sum = 0;
  for (VertexId v : set) sum += w(v);
  return sum;
}

BalancednessReport balancedness(const LabeledGraph& g, const WeightFunction& w) {
  std::optional<BalancednessReport> best;
  for (const Edge& e : g.edges()) {
    if (e.from == e.to) continue;
    Rational ratio = w(e.to) / w(e.from);
    if (ratio < 1) ratio = 1 / ratio;
    if (!best || ratio > best->constant) best = BalancednessReport{ratio, e};
  }
  if (!best) throw PreconditionError("balancedness of an edgeless graph");
  return *best;
}

bool is_balanced_with(const LabeledGraph& g, const WeightFunction& w, const Rational& constant) {
  for (const Edge& e : g.edges()) {
    Rational ratio = w(e.to) / w(e.from);
    if (ratio > constant || ratio * constant < 1) return false;
  }
  return true;
}

Rational cocycle(const LabeledGraph& graph, const WeightFunction& w, const Word& g, VertexId x) {
  auto gx = apply_word(graph, g, x);
  if (!gx) throw PreconditionError("cocycle: translate of '" + graph.name(x) + "' leaves the window");
  return w(*gx) / w(x);
}

WeightFunction ball_weight(const LabeledGraph& g, VertexId center, int r) {
  if (r < 0) throw PreconditionError("ball radius must be non-negative");
  auto layers = spheres(g, center, r);
  for (const auto& layer : layers)
    for (VertexId v : layer)
      if (!g.is_interior(v))
        throw PreconditionError("ball of radius " + std::to_string(r) + " around '" + g.name(center) +
                                "' leaves the window interior");
  WeightFunction w(g.num_vertices());
  const Rational outer(static_cast<unsigned long>(layers.back().size()));
  for (const auto& layer : layers) {
    Rational value = outer / Rational(static_cast<unsigned long>(layer.size()));
    for (VertexId v : layer) w.set(v, value);
  }
  return w;
}

WeightFunction compose_ball_weights(const LabeledGraph& g, const std::vector<BallSpec>& balls) {
  WeightFunction w(g.num_vertices());
  std::vector<VertexSet> hulls;
  for (const auto& b : balls) hulls.push_back(ball(g, b.center, b.r + 1));
  for (std::size_t i = 0; i < hulls.size(); ++i)
    for (std::size_t j = i + 1; j < hulls.size(); ++j)
      if (!set_intersection(hulls[i], hulls[j]).empty())
        throw PreconditionError("balls around '" + g.name(balls[i].center) + "' and '" + g.name(balls[j].center) +
                                "' have overlapping 1-neighborhoods");
  for (const auto& b : balls) {
    WeightFunction single = ball_weight(g, b.center, b.r);
    for (VertexId v : ball(g, b.center, b.r)) w.set(v, single(v));
  }
  return w;
}

std::vector<VertexSet> even_partition(const LabeledGraph& g, VertexId center, int r, const WeightFunction& w, int k) {
  if (k < 1) throw PreconditionError("number of parts must be at least 1");
  auto layers = spheres(g, center, r);
  Rational total = 0;
  for (const auto& layer : layers) total += total_weight(w, layer);
  const Rational target = total / k;
  const Rational limit = 2 * target;

  std::vector<std::vector<VertexId>> parts(1);
  Rational current = 0;
  for (const auto& layer : layers) {
    for (VertexId v : layer) {
      const bool last_part = static_cast<int>(parts.size()) == k;
      if (!last_part && current >= target) {
        parts.emplace_back();
        current = 0;
      }
      parts.back().push_back(v);
      current += w(v);
      if (current >= limit)
        throw InfeasibleError("even partition into " + std::to_string(k) + " parts blocked at vertex '" +
                              g.name(v) + "'");
    }
  }
  if (static_cast<int>(parts.size()) < k || parts.back().empty()) {
    VertexId last = layers.back().empty() ? center : layers.back().ids().back();
    throw InfeasibleError("even partition into " + std::to_string(k) + " parts runs out of vertices at '" +
                          g.name(last) + "'");
  }
  std::vector<VertexSet> out;
  for (auto& p : parts) out.emplace_back(std::move(p));
  return out;
}

}  // namespace wamen
