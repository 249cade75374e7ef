#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wamen/graph.hpp"
#include "wamen/rational.hpp"

namespace wamen {

/// Positive exact weights, one per window vertex. `default_value` is what
/// the weight file uses for vertices it does not list.
class WeightFunction {
 public:
  WeightFunction() = default;
  explicit WeightFunction(std::size_t n, Rational default_value = 1);
  /// Throws InvariantError if any value or the default is not positive.
  WeightFunction(std::vector<Rational> values, Rational default_value);

  static WeightFunction unit(const LabeledGraph& g) { return WeightFunction(g.num_vertices()); }

  const Rational& operator()(VertexId v) const { return values_[v]; }
  const Rational& operator[](VertexId v) const { return values_[v]; }
  void set(VertexId v, Rational value);

  std::size_t size() const { return values_.size(); }
  const Rational& default_value() const { return default_; }
  const std::vector<Rational>& values() const { return values_; }

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  std::vector<Rational> values_;
  Rational default_ = 1;
};

/// w(x) = base^{x_axis} on a lattice window.
WeightFunction exponential_weights(const LabeledGraph& g, int axis = 0, const Rational& base = 2);

/// Independent random weights p/q with 1 <= q <= max_den and 1 <= p <= max_num,
/// drawn from a seeded mt19937_64 so the same seed gives the same weights on
/// every platform.
WeightFunction random_weights(std::size_t n, std::uint64_t seed, unsigned max_den = 16, unsigned max_num = 32);

Rational total_weight(const WeightFunction& w, const VertexSet& set);

struct BalancednessReport {
  Rational constant;
  Edge witness;
};

/// C = max over edges of max(w(y)/w(x), w(x)/w(y)); the witness is the first
/// edge in (vertex, label) order that attains it. Throws PreconditionError
/// on an edgeless graph.
BalancednessReport balancedness(const LabeledGraph& g, const WeightFunction& w);

/// Re-checks 1/C <= w(y)/w(x) <= C on every edge.
bool is_balanced_with(const LabeledGraph& g, const WeightFunction& w, const Rational& constant);

/// rho(g, x) = w(gx) / w(x). Throws PreconditionError if gx leaves the window.
Rational cocycle(const LabeledGraph& graph, const WeightFunction& w, const Word& g, VertexId x);

/// Weight that gives every sphere S_i(center), 0 <= i <= r, the same total,
/// spread evenly inside the sphere and scaled so the outer sphere has unit
/// points: w(x) = |S_r| / |S_i| for x in S_i. Vertices outside the ball get 1.
/// Requires the ball to have full stars (its 1-neighborhood is in the window).
WeightFunction ball_weight(const LabeledGraph& g, VertexId center, int r);

struct BallSpec {
  VertexId center;
  int r;
};

/// Several ball weights at once; the 1-neighborhoods of the balls must be
/// pairwise disjoint.
WeightFunction compose_ball_weights(const LabeledGraph& g, const std::vector<BallSpec>& balls);

/// Splits B_r(center) into k parts of weight < (2/k) w(ball) by sweeping the
/// spheres outward and closing a part once it reaches w(ball)/k. Throws
/// InfeasibleError naming the blocking vertex when the sweep cannot do it.
std::vector<VertexSet> even_partition(const LabeledGraph& g, VertexId center, int r, const WeightFunction& w, int k);

}  // namespace wamen
