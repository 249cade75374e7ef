#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wamen/graph.hpp"
#include "wamen/rational.hpp"
#include "wamen/weights.hpp"

namespace wamen {

/// A supplier x may ship to the buyer g·x for every word g in T.
struct TransportEdge {
  VertexId supplier;
  VertexId buyer;
  std::size_t word;  // index into TransportInstance::words
};

/// Bipartite transportation problem: suppliers hold w(x), buyers accept at
/// most fraction·w(y). Edges are ordered by (supplier, word, buyer).
struct TransportInstance {
  std::vector<Word> words;
  VertexSet suppliers;
  VertexSet buyers;
  std::vector<TransportEdge> edges;
  std::vector<Rational> supply;    // aligned with suppliers
  std::vector<Rational> capacity;  // aligned with buyers
  Rational capacity_fraction{1, 2};
  int k = 0;
  bool exact_length = false;
};

struct TransportOptions {
  int k = 1;
  bool exact_length = false;  // T = words of length exactly k instead of <= k
  Rational capacity_fraction{1, 2};
};

/// Suppliers are the vertices whose k-ball lies in the window (every word of
/// T is defined on them); buyers are their T-images. Throws
/// PreconditionError when no vertex is deep enough.
TransportInstance build_transport(const LabeledGraph& g, const WeightFunction& w, const TransportOptions& options);

/// The depth-k supplier set alone.
VertexSet transport_suppliers(const LabeledGraph& g, int k);

struct FlowAssignment {
  std::vector<Rational> flow;  // aligned with instance edges
  Rational value;
  Rational demand;             // total supply
  bool feasible = false;
};

/// Exact maximum flow over the common-denominator integer scaling of the
/// instance. `feasible` iff every supplier ships its whole supply.
FlowAssignment max_flow(const TransportInstance& inst);

/// Ψ_g(x) for words g in T and suppliers x; x ships Ψ_g(x)·w(x) to g·x.
/// Only nonzero entries are stored.
struct CompressionSystem {
  std::vector<Word> words;
  VertexSet suppliers;
  std::map<std::pair<std::size_t, VertexId>, Rational> psi;
  Rational capacity_fraction{1, 2};
};

/// Ψ_g(x) = a_g(x) / w(x). Throws InfeasibleError on an infeasible flow.
CompressionSystem extract_compression(const FlowAssignment& flow, const TransportInstance& inst,
                                      const WeightFunction& w);

struct CompressionCheck {
  bool valid = false;         // both conditions hold with load <= fraction
  bool strict = false;        // and every load < fraction
  Rational min_slack;         // min over receivers of fraction - load
  std::optional<VertexId> tightest;
  std::string failure;        // first violated condition, empty when valid
};

/// Checks Σ_g Ψ_g(x) = 1 on suppliers, Ψ ∈ [0, 1], and
/// Σ_g Ψ_g(g⁻¹y)·w(g⁻¹y)/w(y) <= fraction on every receiving vertex,
/// recomputing every translate from the graph.
CompressionCheck verify_compression(const CompressionSystem& cs, const LabeledGraph& g, const WeightFunction& w);

/// Hall violator: suppliers L with w(L) > fraction·w(K), K the buyers adjacent to L.
struct CutWitness {
  VertexSet suppliers;   // L
  VertexSet buyers;      // K
  Rational lhs;          // w(L)
  Rational rhs;          // fraction * w(K)
  bool touches_rim = false;  // K meets the non-interior rim of the window
};

/// L = suppliers reachable from the source in the residual network of a
/// maximum flow. Throws PreconditionError on a feasible flow.
CutWitness min_cut_witness(const TransportInstance& inst, const FlowAssignment& flow, const LabeledGraph& g,
                           const WeightFunction& w);

/// Buyers adjacent to L, recomputed from the graph.
VertexSet transport_neighbors(const LabeledGraph& g, const std::vector<Word>& words, const VertexSet& suppliers);

/// Re-derives K, w(L) and w(K) for a witness and checks lhs > rhs.
bool verify_cut(const CutWitness& cut, const LabeledGraph& g, const WeightFunction& w, const std::vector<Word>& words,
                const Rational& fraction, std::string* failure = nullptr);

struct DoublingResult {
  bool holds = false;  // ratio > 2
  Rational ratio;      // w(B_k·C) / w(C)
};

/// Requires the k-neighborhood of C to be faithful to the window.
DoublingResult doubling_check(const LabeledGraph& g, const WeightFunction& w, const VertexSet& set, int k);

struct SolveOptions {
  TransportOptions transport;
  /// Look for capacities fraction/f, f = (ρ/2 + 1)/2 for ρ = 2 + 2^{1-j},
  /// so that every buyer load is strictly below the fraction.
  bool strict = false;
  int strict_steps = 64;
};

struct CompressionOutcome {
  TransportInstance instance;
  CompressionSystem system;
  CompressionCheck check;
  std::optional<Rational> strict_ratio;  // the ρ that worked in strict mode
};

struct CutOutcome {
  TransportInstance instance;
  CutWitness witness;
  Rational flow_value;
};

/// Window-scale dichotomy: either a verified compression system or a
/// verified Hall violator.
std::variant<CompressionOutcome, CutOutcome> solve_compression(const LabeledGraph& g, const WeightFunction& w,
                                                                const SolveOptions& options);

/// Pairing of a compression system with a stage mean on F ⊆ suppliers:
/// total = Σ_{x∈F} Σ_g Ψ_g(x) w(x) / w(F) (= 1),
/// pulled = Σ_{y∈F} load(y) w(y) / w(F) (<= fraction),
/// boundary = w({x ∈ F : g·x ∉ F for some g ∈ T}) / w(F).
/// A mean that is invariant would force total = pulled; the gap is bounded
/// by the boundary term, so a compression system forces boundary >= 1 - fraction.
struct MeanPairing {
  Rational total;
  Rational pulled;
  Rational boundary;
};

MeanPairing pair_with_stage(const CompressionSystem& cs, const LabeledGraph& g, const WeightFunction& w,
                            const VertexSet& stage);

}  // namespace wamen
