#include <algorithm>
#include <map>
#include <set>

#include "wamen/error.hpp"
#include "wamen/separators.hpp"

namespace wamen {

QIMap make_qi_map(const LabeledGraph& g1, const LabeledGraph& g2, std::vector<VertexId> iota, int c,
                  const VertexSet& sample, const VertexSet& dense_over) {
  if (c < 1) throw PreconditionError("quasi-isometry constant must be at least 1");
  if (iota.size() != g1.num_vertices()) throw InvariantError("map must assign an image to every G1 vertex");
  for (VertexId v : iota)
    if (v >= g2.num_vertices()) throw InvariantError("map sends a vertex outside the G2 window");

  QIMap qi;
  qi.iota = std::move(iota);
  qi.c = c;
  qi.degree = std::max(g1.degree_bound(), g2.degree_bound());
  Integer power = 1;
  for (int i = 0; i < 2 * c + 1; ++i) power *= static_cast<unsigned long>(qi.degree);
  qi.big_c = std::max(power, Integer(c * c));

  // c d1 >= d2 - c and c d2 >= d1 - c^2, i.e. d1/c - c <= d2 <= c d1 + c
  const int far = static_cast<int>(std::max(g1.num_vertices(), g2.num_vertices()));
  for (VertexId a : sample) {
    auto d1 = distances_from(g1, VertexSet::from_sorted({a}), far);
    auto d2 = distances_from(g2, VertexSet::from_sorted({qi.iota[a]}), far);
    for (VertexId b : sample) {
      const int x = d1[b], y = d2[qi.iota[b]];
      if (x < 0 || y < 0) throw PreconditionError("sample is not connected in its window");
      if (x - c * c > c * y || y > c * x + c)
        throw InvariantError("map is not a (" + std::to_string(c) + ")-quasi-isometry on '" + g1.name(a) + "', '" +
                             g1.name(b) + "': distances " + std::to_string(x) + " and " + std::to_string(y));
    }
  }
  VertexSet image(qi.iota);
  auto reach = distances_from(g2, image, c);
  for (VertexId z : dense_over)
    if (reach[z] < 0) throw InvariantError("image is not " + std::to_string(c) + "-dense at '" + g2.name(z) + "'");
  return qi;
}

SeparatorResult qi_transfer(const QIMap& qi, const LabeledGraph& g1, const LabeledGraph& g2, const VertexSet& h1,
                            const WeightFunction& w, const SeparatorBackend& backend, const Rational& eps,
                            TransferDetails* details) {
  if (h1.empty()) throw PreconditionError("empty host set");
  if (sgn(eps) <= 0) throw PreconditionError("eps must be positive");
  const int reach = 2 * qi.c;
  TransferDetails local;
  TransferDetails& info = details ? *details : local;
  info = TransferDetails{};

  std::vector<VertexId> images;
  for (VertexId x : h1) images.push_back(qi.iota.at(x));
  info.image = VertexSet(std::move(images));
  if (!neighborhood_is_faithful(g2, info.image, reach))
    throw PreconditionError("the " + std::to_string(reach) + "-neighborhood of the image leaves the G2 window");
  info.image_plus = neighborhood(g2, info.image, reach);
  const VertexSet& plus = info.image_plus;
  const std::size_t n2 = g2.num_vertices();

  // f: nearest point of H1 by image distance, smallest G1 id on ties.
  std::vector<int> best_dist(n2, -1);
  std::vector<VertexId> nearest(n2, kNoVertex);
  for (VertexId x : h1) {
    auto dist = distances_from(g2, VertexSet::from_sorted({qi.iota[x]}), reach);
    for (VertexId z : plus)
      if (dist[z] >= 0 && (best_dist[z] < 0 || dist[z] < best_dist[z])) {
        best_dist[z] = dist[z];
        nearest[z] = x;
      }
  }
  std::vector<Rational> pulled(n2, 0);  // w'
  for (VertexId z : plus) {
    info.nearest.push_back(nearest[z]);
    pulled[z] = w(nearest[z]);
  }
  WeightFunction spread(n2);  // w''
  for (VertexId z : plus) {
    auto dist = distances_from(g2, VertexSet::from_sorted({z}), reach);
    Rational total = 0;
    for (VertexId y : plus)
      if (dist[y] >= 0) total += pulled[y];
    spread.set(z, total);
  }

  SeparatorResult upstairs = backend(g2, plus, spread, eps);
  if (upstairs.weight_fraction > eps)
    throw InfeasibleError("backend separator has weight fraction " + to_string(upstairs.weight_fraction) +
                          " above eps");
  info.backend_removed = upstairs.removed;
  info.backend_max_component = upstairs.max_component;
  info.backend_plus = set_intersection(neighborhood(g2, upstairs.removed, reach), plus);

  std::vector<VertexId> removed;
  const std::vector<char> marked = info.backend_plus.mask(n2);
  for (VertexId x : h1)
    if (marked[qi.iota[x]]) removed.push_back(x);
  SeparatorResult r = make_separator(g1, w, "qi-transfer", h1, VertexSet::from_sorted(std::move(removed)));

  // Components of H1 ∖ M must each land in a single component of H2⁺ ∖ S.
  std::vector<std::size_t> upstairs_label(n2, 0);
  auto up = components_within(g2, plus, upstairs.removed);
  for (std::size_t i = 0; i < up.size(); ++i)
    for (VertexId z : up[i]) upstairs_label[z] = i + 1;
  std::size_t worst_spread = 0;
  for (const auto& comp : components_within(g1, h1, r.removed)) {
    std::set<std::size_t> labels;
    for (VertexId x : comp) labels.insert(upstairs_label[qi.iota[x]]);
    if (labels.count(0)) worst_spread = std::max<std::size_t>(worst_spread, 2);  // image hit S itself
    worst_spread = std::max(worst_spread, labels.size());
  }
  info.claim_holds = worst_spread <= 1;

  const Rational big_c(qi.big_c);
  auto sum_over = [&](const VertexSet& s, const std::vector<Rational>& f) {
    Rational t = 0;
    for (VertexId z : s) t += f[z];
    return t;
  };
  const Rational h1_weight = total_weight(w, h1);
  const Rational m_weight = r.weight_fraction * h1_weight;
  const Rational pulled_plus = sum_over(plus, pulled);
  const Rational pulled_s_plus = sum_over(info.backend_plus, pulled);
  const Rational spread_plus = total_weight(spread, plus);
  const Rational spread_s = total_weight(spread, upstairs.removed);
  r.claims = {
      {"w'(H2+) <= C^2 w(H1)", pulled_plus, big_c * big_c * h1_weight, Relation::less_equal},
      {"w''(H2+) <= C w'(H2+)", spread_plus, big_c * pulled_plus, Relation::less_equal},
      {"w'(S+) <= w''(S)", pulled_s_plus, spread_s, Relation::less_equal},
      {"w(M) <= C^3 eps w(H1)", m_weight, big_c * big_c * big_c * eps * h1_weight, Relation::less_equal},
      {"max component <= C K", Rational(static_cast<unsigned long>(r.max_component)),
       big_c * Rational(static_cast<unsigned long>(upstairs.max_component)), Relation::less_equal},
      {"upstairs components met per downstairs component <= 1", Rational(static_cast<unsigned long>(worst_spread)),
       Rational(1), Relation::less_equal},
  };
  return r;
}

}  // namespace wamen
