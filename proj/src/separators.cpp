#include "wamen/separators.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>

#include "wamen/error.hpp"

namespace wamen {

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::less: return "<";
    case Relation::less_equal: return "<=";
    case Relation::equal: return "=";
    case Relation::greater: return ">";
  }
  return "<=";
}

Relation parse_relation(std::string_view text) {
  if (text == "<") return Relation::less;
  if (text == "<=") return Relation::less_equal;
  if (text == "=") return Relation::equal;
  if (text == ">") return Relation::greater;
  throw ParseError("unknown relation '" + std::string(text) + "'");
}

bool Inequality::holds() const {
  switch (relation) {
    case Relation::less: return lhs < rhs;
    case Relation::less_equal: return lhs <= rhs;
    case Relation::equal: return lhs == rhs;
    case Relation::greater: return lhs > rhs;
  }
  return false;
}

SeparatorResult make_separator(const LabeledGraph& g, const WeightFunction& w, std::string method, VertexSet host,
                               VertexSet removed) {
  SeparatorResult r;
  r.method = std::move(method);
  r.max_component = max_component_size(g, host, removed);
  Rational host_weight = total_weight(w, host);
  r.weight_fraction = sgn(host_weight) == 0 ? Rational(0) : Rational(total_weight(w, removed) / host_weight);
  r.host = std::move(host);
  r.removed = std::move(removed);
  return r;
}

bool check_separator(const LabeledGraph& g, const WeightFunction& w, const SeparatorResult& result,
                     std::string* failure) {
  auto fail = [&](std::string why) {
    if (failure) *failure = std::move(why);
    return false;
  };
  if (!is_subset(result.removed, result.host)) return fail("removed set is not inside the host set");
  if (max_component_size(g, result.host, result.removed) != result.max_component)
    return fail("max_component does not match the components of H minus M");
  Rational host_weight = total_weight(w, result.host);
  Rational fraction = sgn(host_weight) == 0 ? Rational(0) : Rational(total_weight(w, result.removed) / host_weight);
  if (fraction != result.weight_fraction) return fail("weight_fraction does not equal w(M)/w(H)");
  for (const auto& claim : result.claims)
    if (!claim.holds()) return fail("claim '" + claim.name + "' does not hold");
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive separator

namespace {

using Mask = std::uint32_t;

std::size_t largest_component(const std::vector<Mask>& adj, Mask alive, std::size_t limit) {
  std::size_t best = 0;
  while (alive) {
    Mask comp = alive & (~alive + 1);
    Mask frontier = comp;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
      next &= alive & ~comp;
      comp |= next;
      frontier = next;
    }
    std::size_t size = static_cast<std::size_t>(std::popcount(comp));
    best = std::max(best, size);
    if (best > limit) return best;
    alive &= ~comp;
  }
  return best;
}

bool lex_less(Mask a, Mask b) {
  // Sorted index lists compared lexicographically.
  while (a && b) {
    int ia = std::countr_zero(a), ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

}  // namespace

SeparatorResult brute_separator(const LabeledGraph& g, const VertexSet& host, const WeightFunction& w, std::size_t K,
                                std::size_t cap) {
  const std::size_t n = host.size();
  if (n > cap || n > 30)
    throw PreconditionError("brute force separator: " + std::to_string(n) + " vertices exceed the cap of " +
                            std::to_string(std::min<std::size_t>(cap, 30)));
  std::vector<Mask> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (VertexId u : g.neighbors(host[i])) {
      auto it = std::lower_bound(host.begin(), host.end(), u);
      if (it != host.end() && *it == u) adj[i] |= Mask{1} << (it - host.begin());
    }
  const Mask full = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);

  // Integer weights over a common denominator; fall back to exact rationals
  // when the scaled sum does not fit in 62 bits.
  Integer scale = 1;
  for (VertexId v : host) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), w(v).get_den_mpz_t());
  std::vector<Integer> scaled_weights;
  Integer sum = 0;
  for (VertexId v : host) {
    Integer s = scale * w(v).get_num() / w(v).get_den();
    sum += s;
    scaled_weights.push_back(s);
  }
  const bool fast = mpz_sizeinbase(sum.get_mpz_t(), 2) < 62;

  std::vector<long long> fast_weights;
  if (fast)
    for (const auto& s : scaled_weights) fast_weights.push_back(s.get_si());
  auto weight_of = [&](Mask m) -> Integer {
    Integer out = 0;
    for (; m; m &= m - 1) out += scaled_weights[std::countr_zero(m)];
    return out;
  };

  std::optional<Mask> best;
  Integer best_weight;
  long long best_fast = std::numeric_limits<long long>::max();

  auto better = [&](Mask m, int cmp_weight) {
    if (!best) return true;
    if (cmp_weight != 0) return cmp_weight < 0;
    int pa = std::popcount(m), pb = std::popcount(*best);
    if (pa != pb) return pa < pb;
    return lex_less(m, *best);
  };

  for (std::uint64_t mm = 0; mm <= full; ++mm) {
    const Mask m = static_cast<Mask>(mm);
    int order;
    long long fw = 0;
    Integer sw;
    if (fast) {
      fw = 0;
      for (Mask t = m; t; t &= t - 1) fw += fast_weights[std::countr_zero(t)];
      order = !best ? -1 : (fw < best_fast ? -1 : (fw > best_fast ? 1 : 0));
    } else {
      sw = weight_of(m);
      order = !best ? -1 : ::cmp(sw, best_weight);
    }
    if (order > 0) continue;
    if (!better(m, order)) continue;
    if (largest_component(adj, full & ~m, K) > K) continue;
    best = m;
    if (fast) best_fast = fw; else best_weight = sw;
  }
  // The empty host is separated by the empty set; otherwise M = H always works.
  std::vector<VertexId> removed;
  for (Mask t = best.value_or(0); t; t &= t - 1) removed.push_back(host[std::countr_zero(t)]);
  SeparatorResult r = make_separator(g, w, "brute", host, VertexSet::from_sorted(std::move(removed)));
  r.claims.push_back({"max component <= K", Rational(static_cast<unsigned long>(r.max_component)),
                      Rational(static_cast<unsigned long>(K)), Relation::less_equal});
  return r;
}

// ---------------------------------------------------------------------------
// Lattice brick cover and the shell separator

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool unit_step_lattice(const LabeledGraph& g) {
  if (g.family().kind != Family::Kind::lattice) return false;
  const auto& steps = g.family().steps;
  if (static_cast<int>(steps.size()) != g.family().dim) return false;
  for (int i = 0; i < g.family().dim; ++i)
    for (int j = 0; j < g.family().dim; ++j)
      if (steps[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

CoverFamily asdim_cover(const LabeledGraph& g, int r) {
  if (!unit_step_lattice(g))
    throw PreconditionError("brick covers need a lattice window with unit steps; supply a cover file instead");
  if (r < 1) throw PreconditionError("cover scale must be at least 1");
  const int d = g.family().dim;
  std::map<std::vector<int>, std::vector<VertexId>> bricks;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto c = g.coords(v);
    std::vector<int> block(d);
    for (int i = 0; i < d; ++i) block[i] = floor_div(c[i], r);
    bricks[block].push_back(v);
  }
  CoverFamily cover;
  cover.scale = r;
  cover.diameter_bound = d * (r - 1);
  cover.families.resize(std::size_t{1} << d);
  for (auto& [block, members] : bricks) {
    std::size_t family = 0;
    for (int i = 0; i < d; ++i)
      if (floor_div(block[i], 2) * 2 != block[i]) family |= std::size_t{1} << i;
    cover.families[family].emplace_back(std::move(members));
  }
  return cover;
}

int ambient_diameter(const LabeledGraph& g, const VertexSet& set) {
  if (set.empty()) return -1;
  if (unit_step_lattice(g)) {
    // ℓ¹ balls are geodesically convex in the lattice, so window distance is ℓ¹.
    const int d = g.family().dim;
    int best = 0;
    for (std::size_t signs = 0; signs < (std::size_t{1} << d); ++signs) {
      int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
      for (VertexId v : set) {
        auto c = g.coords(v);
        int s = 0;
        for (int i = 0; i < d; ++i) s += (signs >> i & 1) ? -c[i] : c[i];
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      best = std::max(best, hi - lo);
    }
    return best;
  }
  int best = 0;
  for (VertexId v : set) {
    auto dist = distances_from(g, VertexSet::from_sorted({v}), static_cast<int>(g.num_vertices()));
    for (VertexId u : set) {
      if (dist[u] < 0) return std::numeric_limits<int>::max();
      best = std::max(best, dist[u]);
    }
  }
  return best;
}

void validate_cover(const LabeledGraph& g, const CoverFamily& cover) {
  const std::size_t n = g.num_vertices();
  std::vector<int> owner(n, -1);
  std::vector<int> family_of(n, -1);
  int piece_id = 0;
  for (std::size_t f = 0; f < cover.families.size(); ++f)
    for (const auto& piece : cover.families[f]) {
      if (piece.empty()) throw InvariantError("cover contains an empty piece");
      for (VertexId v : piece) {
        if (v >= n) throw InvariantError("cover piece refers to an unknown vertex");
        if (owner[v] >= 0) throw InvariantError("cover pieces overlap at vertex '" + g.name(v) + "'");
        owner[v] = piece_id;
        family_of[v] = static_cast<int>(f);
      }
      if (components_within(g, piece, {}).size() != 1)
        throw InvariantError("cover piece containing '" + g.name(piece[0]) + "' is not connected");
      if (ambient_diameter(g, piece) > cover.diameter_bound)
        throw InvariantError("cover piece containing '" + g.name(piece[0]) + "' has diameter above R = " +
                             std::to_string(cover.diameter_bound));
      ++piece_id;
    }
  for (VertexId v = 0; v < n; ++v)
    if (owner[v] < 0) throw InvariantError("vertex '" + g.name(v) + "' is not covered");

  // Same-family pieces must be at distance >= r.
  for (std::size_t f = 0; f < cover.families.size(); ++f)
    for (const auto& piece : cover.families[f]) {
      const int self = owner[piece[0]];
      auto dist = distances_from(g, piece, cover.scale - 1);
      for (VertexId v = 0; v < n; ++v)
        if (dist[v] > 0 && family_of[v] == static_cast<int>(f) && owner[v] != self)
          throw InvariantError("cover pieces at '" + g.name(piece[0]) + "' and '" + g.name(v) +
                               "' are closer than r = " + std::to_string(cover.scale));
    }
}

Integer moore_bound(std::size_t degree, int radius) {
  if (radius < 0) return 0;
  Integer total = 1, layer = degree;
  for (int i = 1; i <= radius; ++i) {
    total += layer;
    layer *= (degree > 0 ? degree - 1 : 0);
  }
  return total;
}

namespace {

/// Lattice points within ℓ¹ distance `radius` in ℤ^d.
Integer lattice_ball_size(int d, int radius) {
  // counts[j] = points in ℤ^i with ℓ¹ norm exactly j, built one axis at a time
  std::vector<Integer> counts(radius + 1, 0);
  counts[0] = 1;
  for (int axis = 0; axis < d; ++axis) {
    std::vector<Integer> next(radius + 1, 0);
    for (int j = 0; j <= radius; ++j) {
      if (counts[j] == 0) continue;
      next[j] += counts[j];
      for (int x = 1; j + x <= radius; ++x) next[j + x] += 2 * counts[j];
    }
    counts.swap(next);
  }
  Integer total = 0;
  for (const auto& c : counts) total += c;
  return total;
}

}  // namespace

SeparatorResult asdim_separator(const LabeledGraph& g, const VertexSet& host, const WeightFunction& w,
                                const Rational& eps, const CoverFamily& cover, AsdimDetails* details) {
  if (sgn(eps) <= 0 || eps >= 1) throw PreconditionError("eps must lie in (0, 1)");
  Integer inv_floor = eps.get_den() / eps.get_num();
  const int depth = 1 + static_cast<int>(inv_floor.get_si());
  if (cover.scale < 2 * depth)
    throw PreconditionError("cover scale " + std::to_string(cover.scale) + " is below 2(1 + floor(1/eps)) = " +
                            std::to_string(2 * depth));
  if (!neighborhood_is_faithful(g, host, depth))
    throw PreconditionError("the " + std::to_string(depth) + "-neighborhood of H leaves the window");

  const std::size_t m = cover.families.size();
  AsdimDetails local;
  AsdimDetails& info = details ? *details : local;
  info = AsdimDetails{};
  info.depth = depth;
  std::vector<char> in_host = host.mask(g.num_vertices());
  std::vector<char> removed(g.num_vertices(), 0);
  Rational removed_weight = 0;
  const Rational host_weight = total_weight(w, host);

  std::vector<Inequality> claims;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<VertexId> sources;
    for (const auto& piece : cover.families[i]) sources.insert(sources.end(), piece.begin(), piece.end());
    auto dist = distances_from(g, VertexSet(std::move(sources)), depth);
    std::vector<std::vector<VertexId>> shells(depth);
    for (VertexId v = 0; v < dist.size(); ++v)
      if (dist[v] >= 1) shells[dist[v] - 1].push_back(v);
    // Shells at distinct distances are disjoint; check before choosing.
    std::vector<char> seen(g.num_vertices(), 0);
    for (const auto& shell : shells)
      for (VertexId v : shell) {
        if (seen[v]) throw InvariantError("shells overlap");
        seen[v] = 1;
      }
    std::vector<Rational> weights(depth);
    int chosen = 0;
    for (int t = 0; t < depth; ++t) {
      for (VertexId v : shells[t])
        if (in_host[v]) weights[t] += w(v);
      if (weights[t] < weights[chosen]) chosen = t;
    }
    for (VertexId v : shells[chosen])
      if (in_host[v] && !removed[v]) {
        removed[v] = 1;
      }
    claims.push_back({"family " + std::to_string(i) + ": w(S_i(t(i)) ∩ H) <= w(H)/(1+floor(1/eps))",
                      weights[chosen], host_weight / depth, Relation::less_equal});
    info.shell_weights.push_back(std::move(weights));
    info.chosen.push_back(chosen + 1);
  }
  VertexSet removed_set = VertexSet::from_mask(removed);
  removed_weight = total_weight(w, removed_set);

  info.diameter_bound = static_cast<int>(m) * (cover.diameter_bound + 1);
  info.size_bound = unit_step_lattice(g) ? lattice_ball_size(g.family().dim, info.diameter_bound)
                                         : moore_bound(g.degree_bound(), info.diameter_bound);

  SeparatorResult r = make_separator(g, w, "asdim", host, std::move(removed_set));
  int widest = 0;
  for (const auto& comp : components_within(g, r.host, r.removed)) widest = std::max(widest, ambient_diameter(g, comp));
  claims.push_back({"w(S) <= m * eps * w(H)", removed_weight, Rational(static_cast<unsigned long>(m)) * eps * host_weight,
                    Relation::less_equal});
  claims.push_back({"component diameter <= m (R + 1)", Rational(widest),
                    Rational(info.diameter_bound), Relation::less_equal});
  claims.push_back({"max component <= ball size at that diameter",
                    Rational(static_cast<unsigned long>(r.max_component)), Rational(info.size_bound),
                    Relation::less_equal});
  r.claims = std::move(claims);
  return r;
}

// ---------------------------------------------------------------------------
// Backends and the T_δ decomposition

SeparatorBackend brute_backend(std::size_t K, std::size_t cap) {
  return [K, cap](const LabeledGraph& g, const VertexSet& host, const WeightFunction& w, const Rational& eps) {
    SeparatorResult r = brute_separator(g, host, w, K, cap);
    if (r.weight_fraction > eps)
      throw InfeasibleError("brute force backend: the lightest separator with components <= " + std::to_string(K) +
                            " has weight fraction " + to_string(r.weight_fraction) + " > eps");
    return r;
  };
}

SeparatorBackend asdim_backend(CoverFamily cover) {
  return [cover = std::move(cover)](const LabeledGraph& g, const VertexSet& host, const WeightFunction& w,
                                    const Rational& eps) {
    const std::size_t m = std::max<std::size_t>(1, cover.families.empty() ? std::size_t{1} << g.family().dim
                                                                           : cover.families.size());
    Rational inner = eps / Rational(static_cast<unsigned long>(m));
    inner.canonicalize();
    const CoverFamily* use = &cover;
    CoverFamily built;
    if (cover.families.empty()) {
      Integer inv_floor = inner.get_den() / inner.get_num();
      built = asdim_cover(g, 2 * (1 + static_cast<int>(inv_floor.get_si())));
      use = &built;
    }
    return asdim_separator(g, host, w, inner, *use);
  };
}

Decomposition folner_decomposition(const LabeledGraph& g, const WeightFunction& w, const std::vector<VertexSet>& stages,
                                   const Rational& delta, const SeparatorBackend& backend) {
  if (sgn(delta) <= 0) throw PreconditionError("delta must be positive");
  Decomposition out;
  out.balance_constant = balancedness(g, w).constant;
  out.generators = g.generators().size();
  const Rational bound = out.balance_constant * Rational(static_cast<unsigned long>(out.generators)) * delta;
  const std::size_t n = g.num_vertices();

  for (const VertexSet& stage : stages) {
    for (VertexId v : stage)
      if (!g.is_interior(v)) throw PreconditionError("stage vertex '" + g.name(v) + "' is not in the window interior");
    DecompositionStage st;
    st.stage = stage;
    st.separator = backend(g, stage, w, delta);
    if (!(st.separator.weight_fraction < delta))
      throw InfeasibleError("backend separator has weight fraction " + to_string(st.separator.weight_fraction) +
                            ", not below delta");
    st.pieces = components_within(g, stage, st.separator.removed);

    // T-component label: pieces first, then singletons for everything else.
    std::vector<std::size_t> label(n);
    for (VertexId v = 0; v < n; ++v) label[v] = st.pieces.size() + v;
    for (std::size_t p = 0; p < st.pieces.size(); ++p)
      for (VertexId v : st.pieces[p]) label[v] = p;

    const Rational stage_weight = total_weight(w, stage);
    Rational on_boundary = 0;
    for (VertexId v : stage)
      for (VertexId u : g.neighbors(v))
        if (label[u] != label[v]) {
          on_boundary += w(v);
          break;
        }
    st.boundary_ratio = on_boundary / stage_weight;
    st.folner_term = total_weight(w, boundary(g, stage)) / stage_weight;
    st.bound = {"w(boundary of T in F_n)/w(F_n) <= C|S|delta", st.boundary_ratio, bound, Relation::less_equal};
    out.stages.push_back(std::move(st));
  }
  return out;
}

}  // namespace wamen
