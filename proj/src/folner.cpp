#include "wamen/folner.hpp"

#include <algorithm>
#include <sstream>

#include "wamen/error.hpp"

namespace wamen {

FolnerReport folner_defect(const LabeledGraph& g, const WeightFunction& w, const VertexSet& set,
                           const std::vector<Word>& words) {
  if (set.empty()) throw PreconditionError("Følner defect of an empty set");
  FolnerReport report;
  report.set = set;
  report.words = words;
  const Rational base = total_weight(w, set);
  Rational worst = 1;
  for (const Word& word : words) {
    auto moved = translate(g, word, set);
    if (!moved) throw PreconditionError("translate by '" + format_word(word, g.generators()) + "' leaves the window");
    Rational ratio = total_weight(w, set_union(*moved, set)) / base;
    if (ratio > worst) worst = ratio;
    report.ratios.push_back(std::move(ratio));
  }
  report.defect = worst - 1;
  return report;
}

namespace {

struct Candidate {
  VertexSet set;
  std::string shape;
};

bool better(const FolnerReport& a, const FolnerReport& b) {
  if (a.defect != b.defect) return a.defect < b.defect;
  if (a.set.size() != b.set.size()) return a.set.size() < b.set.size();
  return a.set.ids() < b.set.ids();
}

std::optional<VertexSet> lattice_box(const LabeledGraph& g, const std::vector<std::pair<int, int>>& sides) {
  const int d = static_cast<int>(sides.size());
  std::vector<int> c(d);
  for (int i = 0; i < d; ++i) c[i] = sides[i].first;
  std::vector<VertexId> members;
  while (true) {
    auto v = g.lattice_vertex(c);
    if (!v) return std::nullopt;
    members.push_back(*v);
    int i = 0;
    for (; i < d; ++i) {
      if (c[i] < sides[i].second) {
        ++c[i];
        break;
      }
      c[i] = sides[i].first;
    }
    if (i == d) break;
  }
  return VertexSet(std::move(members));
}

std::string box_name(const std::vector<std::pair<int, int>>& sides) {
  std::ostringstream os;
  os << "box ";
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (i) os << 'x';
    os << '[' << sides[i].first << ',' << sides[i].second << ']';
  }
  return os.str();
}

}  // namespace

FolnerSearchResult folner_search(const LabeledGraph& g, const WeightFunction& w, const std::vector<Word>& words,
                                 std::size_t shape_budget) {
  FolnerSearchResult result;
  std::optional<FolnerReport> best;
  std::string best_shape;

  auto consider = [&](const VertexSet& set, const std::string& shape) {
    for (const Word& word : words)
      if (!translate(g, word, set)) return;
    ++result.evaluated;
    FolnerReport report = folner_defect(g, w, set, words);
    if (!best || better(report, *best)) {
      best = std::move(report);
      best_shape = shape;
    }
  };

  if (g.family().kind == Family::Kind::lattice) {
    const int d = g.family().dim;
    int extent = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      for (int x : g.coords(v)) extent = std::max(extent, std::abs(x));
    std::vector<std::pair<int, int>> intervals;
    for (int a = -extent; a <= extent; ++a)
      for (int b = a; b <= extent; ++b) intervals.emplace_back(a, b);

    std::vector<std::vector<std::pair<int, int>>> boxes;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      std::vector<std::pair<int, int>> box(d);
      for (int i = 0; i < d; ++i) box[i] = intervals[idx[i]];
      boxes.push_back(std::move(box));
      int i = 0;
      for (; i < d; ++i) {
        if (++idx[i] < intervals.size()) break;
        idx[i] = 0;
      }
      if (i == d) break;
    }
    auto volume = [](const std::vector<std::pair<int, int>>& b) {
      long long v = 1;
      for (auto [lo, hi] : b) v *= (hi - lo + 1);
      return v;
    };
    std::stable_sort(boxes.begin(), boxes.end(), [&](const auto& a, const auto& b) { return volume(a) > volume(b); });
    for (const auto& box : boxes) {
      if (result.evaluated >= shape_budget) break;
      if (auto set = lattice_box(g, box)) consider(*set, box_name(box));
    }
  } else {
    int max_radius = g.family().radius >= 0 ? g.family().radius : static_cast<int>(g.num_vertices());
    for (int r = max_radius; r >= 0 && result.evaluated < shape_budget; --r) {
      for (VertexId c = 0; c < g.num_vertices() && result.evaluated < shape_budget; ++c) {
        VertexSet b = ball(g, c, r);
        // Balls that already saturate a smaller radius are duplicates.
        if (r > 0 && b == ball(g, c, r - 1)) continue;
        consider(b, "ball(" + g.name(c) + ", " + std::to_string(r) + ")");
      }
    }
  }
  if (!best) throw PreconditionError("no candidate shape fits the window");
  result.best = std::move(*best);
  result.shape = best_shape;
  return result;
}

StageMean::StageMean(VertexSet stage, const WeightFunction& weights, int index)
    : stage_(std::move(stage)), weights_(weights), index_(index), stage_weight_(total_weight(weights, stage_)) {
  if (sgn(stage_weight_) <= 0) throw PreconditionError("stage set has zero weight");
}

Rational StageMean::operator()(const VertexSet& a) const {
  return total_weight(weights(), set_intersection(a, stage_)) / stage_weight_;
}

Rational stage_mean(const StageMean& m, const VertexSet& a) { return m(a); }

namespace {

struct Translates {
  VertexSet forward;   // gF
  VertexSet backward;  // g⁻¹F
};

Translates stage_translates(const LabeledGraph& g, const StageMean& m, const Word& word) {
  auto fwd = translate(g, word, m.stage());
  auto bwd = translate(g, inverse(word, g.generators()), m.stage());
  if (!fwd || !bwd)
    throw PreconditionError("translate of the stage by '" + format_word(word, g.generators()) + "' leaves the window");
  return {std::move(*fwd), std::move(*bwd)};
}

}  // namespace

Rational invariance_defect(const LabeledGraph& g, const StageMean& m, const VertexSet& a, const Word& word) {
  stage_translates(g, m, word);
  const Word inv = inverse(word, g.generators());
  const auto& w = m.weights();
  // gA ∩ F = { y ∈ F : g⁻¹y ∈ A }
  Rational hit = 0;
  for (VertexId y : m.stage())
    if (a.contains(*apply_word(g, inv, y))) hit += w(y);
  // g(A ∩ F)
  Rational moved = 0;
  for (VertexId x : set_intersection(a, m.stage())) moved += w(*apply_word(g, word, x));
  return abs(hit - moved) / m.stage_weight();
}

Rational uniform_invariance_defect(const LabeledGraph& g, const StageMean& m, const Word& word) {
  auto t = stage_translates(g, m, word);
  const auto& w = m.weights();
  Rational added = total_weight(w, set_difference(t.forward, m.stage()));
  Rational lost = total_weight(w, set_difference(m.stage(), t.forward));
  return (added > lost ? added : lost) / m.stage_weight();
}

Rational symmetric_difference_ratio(const LabeledGraph& g, const StageMean& m, const Word& word) {
  auto t = stage_translates(g, m, word);
  const auto& w = m.weights();
  Rational sym = total_weight(w, set_difference(t.forward, m.stage())) +
                 total_weight(w, set_difference(m.stage(), t.forward));
  return sym / m.stage_weight();
}

StageSeries stage_series(const LabeledGraph& g, const std::vector<std::reference_wrapper<const WeightFunction>>& weights,
                         const std::vector<VertexSet>& stages, const std::vector<Word>& words) {
  if (stages.empty()) throw PreconditionError("empty stage sequence");
  if (weights.size() != 1 && weights.size() != stages.size())
    throw PreconditionError("need one weight function or one per stage");
  StageSeries series;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const WeightFunction& w = weights.size() == 1 ? weights[0].get() : weights[i].get();
    series.stages.push_back(folner_defect(g, w, stages[i], words));
  }
  auto extremes = [&](std::size_t from, Rational& lo, Rational& hi) {
    lo = series.stages[from].defect;
    hi = lo;
    for (std::size_t i = from; i < series.stages.size(); ++i) {
      if (series.stages[i].defect < lo) lo = series.stages[i].defect;
      if (series.stages[i].defect > hi) hi = series.stages[i].defect;
    }
  };
  extremes(0, series.min_defect, series.max_defect);
  extremes(series.stages.size() / 2, series.tail_min_defect, series.tail_max_defect);
  return series;
}

}  // namespace wamen
