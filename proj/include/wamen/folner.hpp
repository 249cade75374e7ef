#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wamen/graph.hpp"
#include "wamen/rational.hpp"
#include "wamen/weights.hpp"

namespace wamen {

/// Weighted translate ratios w(gF ∪ F) / w(F) for a finite word set.
struct FolnerReport {
  VertexSet set;
  std::vector<Word> words;
  std::vector<Rational> ratios;  // aligned with words
  Rational defect;               // max ratio - 1
};

/// Throws PreconditionError if F is empty or some translate gF leaves the window.
FolnerReport folner_defect(const LabeledGraph& g, const WeightFunction& w, const VertexSet& set,
                           const std::vector<Word>& words);

struct FolnerSearchResult {
  FolnerReport best;
  std::string shape;  // "box [a,b]x[c,d]" or "ball(center, r)"
  std::size_t evaluated = 0;
};

/// Minimum-defect shape among boxes (lattice windows) or balls (everything
/// else) whose translates stay in the window. At most `shape_budget` shapes
/// are evaluated, larger shapes first. Ties go to the smaller set, then the
/// lexicographically smaller id list.
FolnerSearchResult folner_search(const LabeledGraph& g, const WeightFunction& w, const std::vector<Word>& words,
                                 std::size_t shape_budget = 200000);

/// Finite stage of the weighted mean: A ↦ w(A ∩ F_n) / w(F_n).
class StageMean {
 public:
  /// Throws PreconditionError if w(F_n) = 0 (i.e. F_n is empty).
  StageMean(VertexSet stage, const WeightFunction& weights, int index = 0);

  const VertexSet& stage() const { return stage_; }
  const WeightFunction& weights() const { return weights_.get(); }
  int index() const { return index_; }
  const Rational& stage_weight() const { return stage_weight_; }

  Rational operator()(const VertexSet& a) const;

 private:
  VertexSet stage_;
  std::reference_wrapper<const WeightFunction> weights_;
  int index_;
  Rational stage_weight_;
};

Rational stage_mean(const StageMean& m, const VertexSet& a);

/// |μ_n(gA) − Σ_{x∈A∩F_n} ρ(g,x) w(x)/w(F_n)| = |w(gA∩F_n) − w(g(A∩F_n))| / w(F_n).
/// Needs gF_n and g⁻¹F_n inside the window; A is any subset of the window.
Rational invariance_defect(const LabeledGraph& g, const StageMean& m, const VertexSet& a, const Word& word);

/// Supremum of invariance_defect over all A ⊆ window:
/// max(w(gF∖F), w(F∖gF)) / w(F).
Rational uniform_invariance_defect(const LabeledGraph& g, const StageMean& m, const Word& word);

/// w(gF Δ F) / w(F), the bound every invariance defect obeys.
Rational symmetric_difference_ratio(const LabeledGraph& g, const StageMean& m, const Word& word);

/// Per-stage reports plus the extreme defects over the computed range. Any
/// ultralimit of the stage means lies between these bounds.
struct StageSeries {
  std::vector<FolnerReport> stages;
  Rational min_defect;
  Rational max_defect;
  Rational tail_min_defect;  // over the second half of the range
  Rational tail_max_defect;
};

StageSeries stage_series(const LabeledGraph& g, const std::vector<std::reference_wrapper<const WeightFunction>>& weights,
                         const std::vector<VertexSet>& stages, const std::vector<Word>& words);

}  // namespace wamen
