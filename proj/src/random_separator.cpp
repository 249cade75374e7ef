#include <algorithm>
#include <deque>
#include <random>

#include "wamen/error.hpp"
#include "wamen/separators.hpp"

namespace wamen {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 finalizer over a golden-ratio stride
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

/// Geodesic word from the identity to each vertex of the window.
std::vector<std::optional<Word>> words_from_identity(const LabeledGraph& g, VertexId identity) {
  const std::size_t n = g.num_vertices(), k = g.generators().size();
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<Label> via(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<VertexId> queue{identity};
  seen[identity] = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (Label s = 0; s < k; ++s) {
      VertexId u = g.step(v, s);
      if (u == kNoVertex || seen[u]) continue;
      seen[u] = 1;
      parent[u] = v;
      via[u] = s;
      queue.push_back(u);
    }
  }
  std::vector<std::optional<Word>> out(n);
  for (VertexId v = 0; v < n; ++v) {
    if (!seen[v]) continue;
    Word word;
    // Walking back from v yields the letters last-applied first.
    for (VertexId u = v; u != identity; u = parent[u]) word.letters.push_back(via[u]);
    out[v] = std::move(word);
  }
  return out;
}

}  // namespace

FolnerTiling make_tiling(const LabeledGraph& g, const VertexSet& set, unsigned stage, bool enforce_ratio) {
  if (stage < 1) throw PreconditionError("stage index must be at least 1");
  const VertexId identity = identity_vertex(g);
  if (!set.contains(identity)) throw PreconditionError("the tiling set must contain the identity");
  FolnerTiling t;
  t.set = set;
  t.boundary = boundary(g, set);
  t.stage = stage;
  if (enforce_ratio) {
    Rational ratio(static_cast<unsigned long>(t.boundary.size()), static_cast<unsigned long>(set.size()));
    ratio.canonicalize();
    Rational limit(1, static_cast<unsigned long>(stage) * stage);
    if (ratio > limit)
      throw PreconditionError("|boundary F|/|F| = " + to_string(ratio) + " exceeds n^-2 = " + to_string(limit));
  }
  auto words = words_from_identity(g, identity);
  for (VertexId v : set) {
    if (!words[v]) throw PreconditionError("vertex '" + g.name(v) + "' is not reachable from the identity");
    t.elements.push_back(*words[v]);
  }
  for (VertexId v : t.boundary) t.boundary_elements.push_back(*words[v]);
  t.probability_numerator = folner_probability_numerator(stage, static_cast<unsigned>(t.boundary.size()));
  Integer two64 = Integer(1) << 64;
  t.probability = Rational(t.probability_numerator, two64);
  t.probability.canonicalize();
  return t;
}

RandomSeparatorRun random_folner_separator(const LabeledGraph& g, const VertexSet& host, const WeightFunction& w,
                                           const FolnerTiling& tiling, std::uint64_t seed, int max_trials) {
  if (max_trials < 1) throw PreconditionError("at least one trial is needed");
  const std::size_t n = g.num_vertices();
  const GeneratorSet& gens = g.generators();

  // Candidate translates v with F v meeting H: v = f⁻¹ x for f in F, x in H.
  std::vector<VertexId> candidates;
  for (const Word& f : tiling.elements) {
    const Word back = inverse(f, gens);
    for (VertexId x : host) {
      auto v = apply_word(g, back, x);
      if (!v) throw PreconditionError("window too small: F^-1 H leaves it at '" + g.name(x) + "'");
      candidates.push_back(*v);
    }
  }
  const VertexSet candidate_set(std::move(candidates));
  // Each candidate's right translates, checked once up front.
  std::vector<std::vector<VertexId>> covers(candidate_set.size()), rims(candidate_set.size());
  for (std::size_t i = 0; i < candidate_set.size(); ++i) {
    const VertexId v = candidate_set[i];
    auto image = [&](const Word& f) {
      auto y = apply_word(g, f, v);
      if (!y) throw PreconditionError("window too small: F translate of '" + g.name(v) + "' leaves it");
      return *y;
    };
    for (const Word& f : tiling.elements) covers[i].push_back(image(f));
    for (const Word& f : tiling.boundary_elements) rims[i].push_back(image(f));
  }

  const Rational host_weight = total_weight(w, host);
  RandomSeparatorRun run;
  run.exp_bound = exp_neg_upper_bound(tiling.stage);
  run.threshold = 2 * (Rational(1, tiling.stage) + run.exp_bound) * host_weight;
  run.threshold.canonicalize();
  const Integer two64 = Integer(1) << 64;
  const bool always = tiling.probability_numerator >= two64;
  static_assert(sizeof(unsigned long) == 8, "probability numerators are read as 64-bit values");
  const std::uint64_t cutoff = always ? 0 : mpz_get_ui(tiling.probability_numerator.get_mpz_t());

  std::optional<SeparatorResult> best;
  for (int t = 0; t < max_trials; ++t) {
    const std::uint64_t ts = trial_seed(seed, static_cast<std::uint64_t>(t));
    std::mt19937_64 rng(ts);
    std::vector<char> covered(n, 0), rim(n, 0);
    for (std::size_t i = 0; i < candidate_set.size(); ++i) {
      const std::uint64_t draw = rng();
      if (!always && draw >= cutoff) continue;
      for (VertexId y : covers[i]) covered[y] = 1;
      for (VertexId y : rims[i]) rim[y] = 1;
    }
    std::vector<VertexId> removed;
    for (VertexId x : host)
      if (rim[x] || !covered[x]) removed.push_back(x);
    SeparatorResult r = make_separator(g, w, "random-folner", host, VertexSet::from_sorted(std::move(removed)));
    r.seed = ts;
    const Rational weight = r.weight_fraction * host_weight;
    r.accepted = weight <= run.threshold;
    r.claims.push_back({"w(S u B) <= 2 (1/n + e^-n bound) w(H)", weight, run.threshold, Relation::less_equal});
    r.claims.push_back({"max component <= |F_n|", Rational(static_cast<unsigned long>(r.max_component)),
                        Rational(static_cast<unsigned long>(tiling.set.size())), Relation::less_equal});
    run.trials.push_back({ts, weight, r.max_component, r.accepted});
    const bool accepted = r.accepted;
    if (!best || accepted || r.weight_fraction < best->weight_fraction) best = std::move(r);
    if (accepted) break;
  }
  run.result = std::move(*best);
  return run;
}

}  // namespace wamen
