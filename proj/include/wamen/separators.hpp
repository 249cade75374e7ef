#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wamen/graph.hpp"
#include "wamen/rational.hpp"
#include "wamen/weights.hpp"

namespace wamen {

enum class Relation { less, less_equal, equal, greater };

std::string to_string(Relation rel);
Relation parse_relation(std::string_view text);

/// One checked inequality with both sides kept exact, for reports.
struct Inequality {
  std::string name;
  Rational lhs;
  Rational rhs;
  Relation relation = Relation::less_equal;

  bool holds() const;
};

/// A vertex set M ⊆ H whose removal leaves small components of H.
struct SeparatorResult {
  std::string method;
  VertexSet host;       // H
  VertexSet removed;    // M
  Rational weight_fraction;  // w(M) / w(H)
  std::size_t max_component = 0;
  std::optional<std::uint64_t> seed;
  bool accepted = true;
  std::vector<Inequality> claims;
};

/// Recomputes the components of H ∖ M and w(M)/w(H); true iff both agree
/// with the stored values and M ⊆ H.
bool check_separator(const LabeledGraph& g, const WeightFunction& w, const SeparatorResult& result,
                     std::string* failure = nullptr);

/// Fills weight_fraction and max_component from scratch.
SeparatorResult make_separator(const LabeledGraph& g, const WeightFunction& w, std::string method, VertexSet host,
                               VertexSet removed);

/// Minimum-weight M ⊆ H leaving components of size <= K; ties prefer fewer
/// vertices, then the lexicographically smaller id list. Exhaustive over
/// 2^|H| subsets, so |H| must not exceed `cap`.
SeparatorResult brute_separator(const LabeledGraph& g, const VertexSet& host, const WeightFunction& w, std::size_t K,
                                std::size_t cap = 20);

/// Families of pairwise far-apart bounded pieces covering the window.
struct CoverFamily {
  std::vector<std::vector<VertexSet>> families;
  int scale = 0;           // r: same-family pieces are at distance >= r
  int diameter_bound = 0;  // R
};

/// Lattice brick cover: bricks of side r indexed by floor(x_i / r), grouped
/// into 2^d families by block parity. R = d (r - 1).
CoverFamily asdim_cover(const LabeledGraph& g, int r);

/// Throws InvariantError naming the first violated cover property
/// (disjointness, coverage, separation r, diameter R, connectivity).
void validate_cover(const LabeledGraph& g, const CoverFamily& cover);

struct AsdimDetails {
  int depth = 0;                                  // 1 + floor(1/eps)
  std::vector<std::vector<Rational>> shell_weights;  // [family][t - 1] = w(S_i(t) ∩ H)
  std::vector<int> chosen;                        // t(i)
  int diameter_bound = 0;                         // m (R + 1)
  Integer size_bound;                             // Moore bound for that diameter
};

/// Shell separator: for each cover family pick the lightest shell
/// S_i(t) ∩ H, 1 <= t <= 1 + floor(1/eps), and remove their union.
SeparatorResult asdim_separator(const LabeledGraph& g, const VertexSet& host, const WeightFunction& w,
                                const Rational& eps, const CoverFamily& cover, AsdimDetails* details = nullptr);

/// Largest possible number of vertices within distance `radius` of a vertex
/// in a graph of maximum degree `degree`.
Integer moore_bound(std::size_t degree, int radius);

/// Diameter of a vertex set measured in the ambient graph (BFS from each
/// member); -1 for the empty set.
int ambient_diameter(const LabeledGraph& g, const VertexSet& set);

/// Følner set used to tile by random right translates.
struct FolnerTiling {
  VertexSet set;                 // F_n, contains the identity
  VertexSet boundary;            // ∂F_n
  std::vector<Word> elements;    // a word for each member of F_n, aligned with set
  std::vector<Word> boundary_elements;
  unsigned stage = 1;            // n
  Integer probability_numerator; // p_n = numerator / 2^64, an upper bound on the exact root
  Rational probability;
};

/// Requires F_n inside the interior and containing the identity; with
/// `enforce_ratio`, also |∂F_n| / |F_n| <= n^{-2}.
FolnerTiling make_tiling(const LabeledGraph& g, const VertexSet& set, unsigned stage, bool enforce_ratio = true);

struct TrialRecord {
  std::uint64_t seed;
  Rational weight;  // w(S_n ∪ B_n)
  std::size_t max_component;
  bool accepted;
};

struct RandomSeparatorRun {
  SeparatorResult result;  // accepted trial, or the lightest one flagged unaccepted
  std::vector<TrialRecord> trials;
  Rational threshold;  // 2 (1/n + bound on e^{-n}) w(H)
  Rational exp_bound;
};

/// Per trial: R ⊆ F_n⁻¹·H sampled with probability p_n, B = H ∖ F_n R,
/// S = (∂F_n) R ∩ H; accept when w(S ∪ B) <= threshold. Trial t uses the seed
/// derived from (seed, t), so trials are independent of evaluation order.
RandomSeparatorRun random_folner_separator(const LabeledGraph& g, const VertexSet& host, const WeightFunction& w,
                                           const FolnerTiling& tiling, std::uint64_t seed, int max_trials = 20);

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Tabulated quasi-isometry ι : G₁ → G₂.
struct QIMap {
  std::vector<VertexId> iota;  // indexed by G₁ vertex
  int c = 1;
  std::size_t degree = 0;      // common degree bound d
  Integer big_c;               // C = max(d^{2c+1}, c^2)
};

/// Builds the map and checks the quasi-isometry inequalities on all pairs of
/// `sample` (G₁ vertices) plus c-density of ι(G₁) over `dense_over`.
QIMap make_qi_map(const LabeledGraph& g1, const LabeledGraph& g2, std::vector<VertexId> iota, int c,
                  const VertexSet& sample, const VertexSet& dense_over);

using SeparatorBackend =
    std::function<SeparatorResult(const LabeledGraph&, const VertexSet&, const WeightFunction&, const Rational&)>;

SeparatorBackend brute_backend(std::size_t K, std::size_t cap = 20);
SeparatorBackend asdim_backend(CoverFamily cover);

struct TransferDetails {
  VertexSet image;        // H₂ = ι(H₁)
  VertexSet image_plus;   // H₂⁺
  VertexSet backend_removed;  // S
  VertexSet backend_plus;     // S⁺
  std::size_t backend_max_component = 0;
  std::vector<VertexId> nearest;  // f restricted to H₂⁺ (indexed by position in image_plus)
  bool claim_holds = true;  // different components upstairs stay apart downstairs
};

/// Pulls a separator of the image back through ι: M = ι⁻¹(S⁺) ∩ H₁ with
/// w(M) <= C³ eps w(H₁) and components <= C·K.
SeparatorResult qi_transfer(const QIMap& qi, const LabeledGraph& g1, const LabeledGraph& g2, const VertexSet& h1,
                            const WeightFunction& w, const SeparatorBackend& backend, const Rational& eps,
                            TransferDetails* details = nullptr);

struct DecompositionStage {
  VertexSet stage;
  SeparatorResult separator;
  std::vector<VertexSet> pieces;  // components of F_n minus the separator
  Rational boundary_ratio;        // w(∂T ∩ F_n) / w(F_n)
  Rational folner_term;           // w(∂F_n) / w(F_n)
  Inequality bound;               // boundary_ratio <= C |S| delta
};

struct Decomposition {
  Rational balance_constant;  // C
  std::size_t generators = 0; // |S|
  std::vector<DecompositionStage> stages;
};

/// For each stage F_n: remove a (w, delta)-separator, keep the components as
/// pieces of T and every other vertex as a singleton, and measure the
/// weight of the T-boundary inside F_n.
Decomposition folner_decomposition(const LabeledGraph& g, const WeightFunction& w, const std::vector<VertexSet>& stages,
                                   const Rational& delta, const SeparatorBackend& backend);

}  // namespace wamen
