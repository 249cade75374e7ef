#include "wamen/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "wamen/error.hpp"

namespace wamen {

// ---------------------------------------------------------------------------
// Generators and words

GeneratorSet GeneratorSet::from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  GeneratorSet gens;
  std::map<std::string, std::string> partner;
  auto record = [&](const std::string& a, const std::string& b) {
    auto [it, inserted] = partner.emplace(a, b);
    if (!inserted && it->second != b)
      throw InvariantError("generator '" + a + "' has two different inverses");
  };
  auto check_name = [](const std::string& s) {
    if (s.empty() || s == "e" || s.find(',') != std::string::npos || s.find('|') != std::string::npos)
      throw InvariantError("invalid generator label '" + s + "'");
  };
  for (const auto& [a, b] : pairs) {
    check_name(a);
    check_name(b);
    record(a, b);
    record(b, a);
  }
  // Keep the order labels first appear in.
  for (const auto& [a, b] : pairs) {
    for (const auto* s : {&a, &b}) {
      if (std::find(gens.names_.begin(), gens.names_.end(), *s) == gens.names_.end()) gens.names_.push_back(*s);
    }
  }
  gens.inverse_.resize(gens.names_.size());
  for (Label s = 0; s < gens.names_.size(); ++s) gens.inverse_[s] = *gens.find(partner.at(gens.names_[s]));
  return gens;
}

std::optional<Label> GeneratorSet::find(std::string_view name) const {
  for (Label s = 0; s < names_.size(); ++s)
    if (names_[s] == name) return s;
  return std::nullopt;
}

Label GeneratorSet::at(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw ParseError("unknown generator label '" + std::string(name) + "'");
}

Word inverse(const Word& w, const GeneratorSet& gens) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(gens.inverse(*it));
  return out;
}

Word concat(const Word& g, const Word& h) {
  Word out = g;
  out.letters.insert(out.letters.end(), h.letters.begin(), h.letters.end());
  return out;
}

std::string format_word(const Word& w, const GeneratorSet& gens) {
  if (w.is_identity()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ',';
    out += gens.name(w.letters[i]);
  }
  return out;
}

Word parse_word(std::string_view text, const GeneratorSet& gens) {
  Word w;
  if (text.empty() || text == "e") return w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (token.empty()) throw ParseError("empty letter in word '" + std::string(text) + "'");
    w.letters.push_back(gens.at(token));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return w;
}

std::vector<Word> generator_words(const GeneratorSet& gens) {
  std::vector<Word> out;
  for (Label s = 0; s < gens.size(); ++s) out.push_back(Word{{s}});
  return out;
}

// ---------------------------------------------------------------------------
// Vertex sets

VertexSet::VertexSet(std::vector<VertexId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::from_sorted(std::vector<VertexId> members) {
  VertexSet s;
  s.members_ = std::move(members);
  return s;
}

VertexSet VertexSet::from_mask(std::span<const char> mask) {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) out.push_back(static_cast<VertexId>(v));
  return from_sorted(std::move(out));
}

bool VertexSet::contains(VertexId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

std::vector<char> VertexSet::mask(std::size_t n) const {
  std::vector<char> m(n, 0);
  for (VertexId v : members_) m[v] = 1;
  return m;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<VertexId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from_sorted(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from_sorted(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<VertexId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from_sorted(std::move(out));
}

bool is_subset(const VertexSet& a, const VertexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::string to_string(Family::Kind kind) {
  switch (kind) {
    case Family::Kind::lattice: return "lattice";
    case Family::Kind::free_group: return "free";
    case Family::Kind::custom: return "custom";
  }
  return "custom";
}

// ---------------------------------------------------------------------------
// LabeledGraph

namespace {

std::string lattice_name(std::span<const int> c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out;
}

}  // namespace

LabeledGraph::LabeledGraph(GeneratorSet gens, std::vector<std::string> names, std::vector<VertexId> action,
                           VertexSet interior, Family family)
    : gens_(std::move(gens)),
      names_(std::move(names)),
      action_(std::move(action)),
      interior_(std::move(interior)),
      family_(std::move(family)) {
  const std::size_t n = names_.size();
  const std::size_t k = gens_.size();
  if (action_.size() != n * k) throw InvariantError("action table has the wrong size");
  for (VertexId v = 0; v < n; ++v) {
    if (names_[v].empty()) throw InvariantError("empty vertex id");
    if (!index_.emplace(names_[v], v).second) throw InvariantError("duplicate vertex id '" + names_[v] + "'");
  }
  for (VertexId v = 0; v < n; ++v) {
    for (Label s = 0; s < k; ++s) {
      VertexId u = step(v, s);
      if (u == kNoVertex) continue;
      if (u >= n) throw InvariantError("edge to unknown vertex from '" + names_[v] + "'");
      if (step(u, gens_.inverse(s)) != v)
        throw InvariantError("edge (" + names_[v] + ", " + names_[u] + ", " + gens_.name(s) +
                             ") has no matching inverse edge");
    }
  }
  for (VertexId v : interior_)
    if (v >= n) throw InvariantError("interior vertex out of range");
  interior_mask_ = interior_.mask(n);
  for (VertexId v : interior_) {
    for (Label s = 0; s < k; ++s)
      if (step(v, s) == kNoVertex)
        throw InvariantError("interior vertex '" + names_[v] + "' lacks an edge labeled '" + gens_.name(s) + "'");
  }

  offsets_.assign(n + 1, 0);
  std::vector<VertexId> buf;
  for (VertexId v = 0; v < n; ++v) {
    buf.clear();
    for (Label s = 0; s < k; ++s) {
      VertexId u = step(v, s);
      if (u != kNoVertex && u != v) buf.push_back(u);
    }
    std::sort(buf.begin(), buf.end());
    buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
    adjacency_.insert(adjacency_.end(), buf.begin(), buf.end());
    offsets_[v + 1] = adjacency_.size();
    degree_bound_ = std::max(degree_bound_, buf.size());
  }

  if (family_.kind == Family::Kind::lattice) {
    coords_.reserve(n * family_.dim);
    for (VertexId v = 0; v < n; ++v) {
      std::size_t pos = 0;
      int count = 0;
      const std::string& s = names_[v];
      while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string token = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
          std::size_t used = 0;
          int value = std::stoi(token, &used);
          if (used != token.size()) throw std::invalid_argument(token);
          coords_.push_back(value);
        } catch (const std::exception&) {
          throw InvariantError("lattice vertex id '" + s + "' is not an integer vector");
        }
        ++count;
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (count != family_.dim) throw InvariantError("lattice vertex id '" + s + "' has the wrong dimension");
    }
  }
}

std::optional<VertexId> LabeledGraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId LabeledGraph::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InvariantError("unknown vertex id '" + std::string(name) + "'");
}

std::size_t LabeledGraph::num_edges() const { return adjacency_.size() / 2; }

std::vector<Edge> LabeledGraph::edges() const {
  std::vector<Edge> out;
  for (VertexId v = 0; v < num_vertices(); ++v)
    for (Label s = 0; s < gens_.size(); ++s)
      if (VertexId u = step(v, s); u != kNoVertex) out.push_back({v, u, s});
  return out;
}

VertexSet LabeledGraph::all_vertices() const {
  std::vector<VertexId> ids(num_vertices());
  std::iota(ids.begin(), ids.end(), VertexId{0});
  return VertexSet::from_sorted(std::move(ids));
}

std::span<const int> LabeledGraph::coords(VertexId v) const {
  if (family_.kind != Family::Kind::lattice) throw PreconditionError("coordinates requested on a non-lattice window");
  return {coords_.data() + static_cast<std::size_t>(v) * family_.dim, static_cast<std::size_t>(family_.dim)};
}

std::optional<VertexId> LabeledGraph::lattice_vertex(std::span<const int> c) const { return find(lattice_name(c)); }

// ---------------------------------------------------------------------------
// Built-in windows

namespace {

LabeledGraph build_lattice(const Family& family_in, int radius) {
  Family family = family_in;
  const int d = family.dim;
  if (d < 1) throw InvariantError("lattice dimension must be positive");
  if (family.steps.empty())
    for (int i = 0; i < d; ++i) {
      std::vector<int> e(d, 0);
      e[i] = 1;
      family.steps.push_back(std::move(e));
    }
  for (const auto& step : family.steps) {
    if (static_cast<int>(step.size()) != d) throw InvariantError("lattice step has the wrong dimension");
    if (std::all_of(step.begin(), step.end(), [](int x) { return x == 0; }))
      throw InvariantError("lattice step must be nonzero");
  }
  family.kind = Family::Kind::lattice;
  family.radius = radius;

  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::vector<int>> moves;
  for (std::size_t i = 0; i < family.steps.size(); ++i) {
    pairs.emplace_back("+" + std::to_string(i + 1), "-" + std::to_string(i + 1));
  }
  GeneratorSet gens = GeneratorSet::from_pairs(pairs);
  for (Label s = 0; s < gens.size(); ++s) {
    const auto& base = family.steps[s / 2];
    std::vector<int> m = base;
    if (s % 2) for (int& x : m) x = -x;
    moves.push_back(std::move(m));
  }

  // Word-metric ball via BFS, then canonical lexicographic coordinate order.
  std::map<std::vector<int>, int> dist;
  std::deque<std::vector<int>> queue;
  std::vector<int> origin(d, 0);
  dist[origin] = 0;
  queue.push_back(origin);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    int dc = dist[cur];
    if (dc == radius) continue;
    for (const auto& m : moves) {
      std::vector<int> nxt = cur;
      for (int i = 0; i < d; ++i) nxt[i] += m[i];
      if (dist.emplace(nxt, dc + 1).second) queue.push_back(std::move(nxt));
    }
  }

  std::vector<std::string> names;
  std::map<std::vector<int>, VertexId> id;
  for (const auto& [c, _] : dist) {
    id.emplace(c, static_cast<VertexId>(names.size()));
    names.push_back(lattice_name(c));
  }
  const std::size_t k = gens.size();
  std::vector<VertexId> action(names.size() * k, kNoVertex);
  std::vector<VertexId> interior;
  for (const auto& [c, v] : id) {
    for (Label s = 0; s < k; ++s) {
      std::vector<int> nxt = c;
      for (int i = 0; i < d; ++i) nxt[i] += moves[s][i];
      if (auto it = id.find(nxt); it != id.end()) action[v * k + s] = it->second;
    }
    if (dist.at(c) < radius) interior.push_back(v);
  }
  return LabeledGraph(std::move(gens), std::move(names), std::move(action), VertexSet(std::move(interior)),
                      std::move(family));
}

LabeledGraph build_free(int rank, int radius) {
  if (rank < 1 || rank > 26) throw InvariantError("free group rank must be in [1, 26]");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < rank; ++i)
    pairs.emplace_back(std::string(1, static_cast<char>('a' + i)), std::string(1, static_cast<char>('A' + i)));
  GeneratorSet gens = GeneratorSet::from_pairs(pairs);
  const std::size_t k = gens.size();

  // Reduced words in shortlex order, as label sequences.
  std::vector<std::vector<Label>> words{{}};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    std::size_t layer_end = words.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (Label s = 0; s < k; ++s) {
        const auto& w = words[i];
        if (!w.empty() && w.back() == gens.inverse(s)) continue;
        auto next = w;
        next.push_back(s);
        words.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
  std::map<std::vector<Label>, VertexId> id;
  std::vector<std::string> names;
  for (const auto& w : words) {
    id.emplace(w, static_cast<VertexId>(names.size()));
    std::string name;
    for (Label s : w) name += gens.name(s);
    names.push_back(name.empty() ? "e" : name);
  }
  std::vector<VertexId> action(words.size() * k, kNoVertex);
  std::vector<VertexId> interior;
  for (VertexId v = 0; v < words.size(); ++v) {
    const auto& w = words[v];
    for (Label s = 0; s < k; ++s) {
      // left multiplication: s·w
      std::vector<Label> prod;
      if (!w.empty() && w.front() == gens.inverse(s)) {
        prod.assign(w.begin() + 1, w.end());
      } else {
        prod.reserve(w.size() + 1);
        prod.push_back(s);
        prod.insert(prod.end(), w.begin(), w.end());
      }
      if (auto it = id.find(prod); it != id.end()) action[v * k + s] = it->second;
    }
    if (static_cast<int>(w.size()) < radius) interior.push_back(v);
  }
  Family family;
  family.kind = Family::Kind::free_group;
  family.rank = rank;
  family.radius = radius;
  return LabeledGraph(std::move(gens), std::move(names), std::move(action), VertexSet(std::move(interior)),
                      std::move(family));
}

}  // namespace

LabeledGraph build_cayley_window(const Family& family, int radius) {
  if (radius < 0) throw PreconditionError("radius must be non-negative");
  switch (family.kind) {
    case Family::Kind::lattice: return build_lattice(family, radius);
    case Family::Kind::free_group: return build_free(family.rank, radius);
    case Family::Kind::custom: break;
  }
  throw PreconditionError("unsupported group family for a Cayley window");
}

LabeledGraph build_lattice_window(int dim, int radius) {
  Family f;
  f.kind = Family::Kind::lattice;
  f.dim = dim;
  return build_cayley_window(f, radius);
}

LabeledGraph build_free_window(int rank, int radius) {
  Family f;
  f.kind = Family::Kind::free_group;
  f.rank = rank;
  return build_cayley_window(f, radius);
}

VertexId identity_vertex(const LabeledGraph& g) {
  switch (g.family().kind) {
    case Family::Kind::lattice: {
      std::vector<int> origin(g.family().dim, 0);
      if (auto v = g.lattice_vertex(origin)) return *v;
      break;
    }
    case Family::Kind::free_group:
      if (auto v = g.find("e")) return *v;
      break;
    case Family::Kind::custom: break;
  }
  throw PreconditionError("window has no distinguished identity vertex");
}

// ---------------------------------------------------------------------------
// Queries

std::optional<VertexId> apply_word(const LabeledGraph& g, const Word& word, VertexId v) {
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    v = g.step(v, *it);
    if (v == kNoVertex) return std::nullopt;
  }
  return v;
}

std::optional<VertexSet> translate(const LabeledGraph& g, const Word& word, const VertexSet& set) {
  std::vector<VertexId> out;
  out.reserve(set.size());
  for (VertexId v : set) {
    auto u = apply_word(g, word, v);
    if (!u) return std::nullopt;
    out.push_back(*u);
  }
  return VertexSet(std::move(out));
}

VertexSet boundary(const LabeledGraph& g, const VertexSet& set) {
  std::vector<char> in = set.mask(g.num_vertices());
  std::vector<VertexId> out;
  for (VertexId v : set) {
    if (!g.is_interior(v))
      throw PreconditionError("boundary: vertex '" + g.name(v) + "' is not in the window interior");
    for (VertexId u : g.neighbors(v))
      if (!in[u]) {
        out.push_back(v);
        break;
      }
  }
  return VertexSet::from_sorted(std::move(out));
}

std::vector<int> distances_from(const LabeledGraph& g, const VertexSet& sources, int max_depth) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<VertexId> frontier;
  for (VertexId v : sources) {
    dist[v] = 0;
    frontier.push_back(v);
  }
  std::vector<VertexId> next;
  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    next.clear();
    for (VertexId v : frontier)
      for (VertexId u : g.neighbors(v))
        if (dist[u] < 0) {
          dist[u] = depth;
          next.push_back(u);
        }
    frontier.swap(next);
  }
  return dist;
}

VertexSet neighborhood(const LabeledGraph& g, const VertexSet& set, int r) {
  if (r < 0) throw PreconditionError("neighborhood radius must be non-negative");
  auto dist = distances_from(g, set, r);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < dist.size(); ++v)
    if (dist[v] >= 0) out.push_back(v);
  return VertexSet::from_sorted(std::move(out));
}

VertexSet ball(const LabeledGraph& g, VertexId center, int r) { return neighborhood(g, VertexSet({center}), r); }

std::vector<VertexSet> spheres(const LabeledGraph& g, VertexId center, int r) {
  auto dist = distances_from(g, VertexSet({center}), r);
  std::vector<std::vector<VertexId>> layers(static_cast<std::size_t>(r) + 1);
  for (VertexId v = 0; v < dist.size(); ++v)
    if (dist[v] >= 0) layers[dist[v]].push_back(v);
  std::vector<VertexSet> out;
  for (auto& layer : layers) out.push_back(VertexSet::from_sorted(std::move(layer)));
  return out;
}

std::vector<VertexSet> components_within(const LabeledGraph& g, const VertexSet& within, const VertexSet& removed) {
  const std::size_t n = g.num_vertices();
  std::vector<char> alive = within.mask(n);
  for (VertexId v : removed) alive[v] = 0;
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> out;
  std::vector<VertexId> stack;
  for (VertexId start : within) {
    if (!alive[start] || seen[start]) continue;
    std::vector<VertexId> comp;
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (VertexId u : g.neighbors(v))
        if (alive[u] && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    out.emplace_back(std::move(comp));
  }
  return out;
}

std::vector<VertexSet> components(const LabeledGraph& g, const VertexSet& removed) {
  return components_within(g, g.all_vertices(), removed);
}

std::size_t max_component_size(const LabeledGraph& g, const VertexSet& within, const VertexSet& removed) {
  std::size_t best = 0;
  for (const auto& c : components_within(g, within, removed)) best = std::max(best, c.size());
  return best;
}

bool neighborhood_is_faithful(const LabeledGraph& g, const VertexSet& set, int depth) {
  if (depth <= 0) return true;
  auto dist = distances_from(g, set, depth - 1);
  for (VertexId v = 0; v < dist.size(); ++v)
    if (dist[v] >= 0 && !g.is_interior(v)) return false;
  return true;
}

std::vector<Word> words_up_to(const LabeledGraph& g, int k, bool exact_length) {
  if (k < 0) throw PreconditionError("word length must be non-negative");
  const GeneratorSet& gens = g.generators();
  std::vector<Word> all{Word{}};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= k; ++len) {
    std::size_t layer_end = all.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (Label s = 0; s < gens.size(); ++s) {
        const Word& w = all[i];
        if (!w.letters.empty() && w.letters.back() == gens.inverse(s)) continue;
        Word next = w;
        next.letters.push_back(s);
        all.push_back(std::move(next));
      }
    layer_begin = layer_end;
  }

  std::vector<Word> out;
  if (g.family().kind == Family::Kind::lattice) {
    const auto& steps = g.family().steps;
    std::set<std::vector<int>> seen;
    for (const Word& w : all) {
      std::vector<int> disp(g.family().dim, 0);
      for (Label s : w.letters)
        for (int i = 0; i < g.family().dim; ++i) disp[i] += (s % 2 ? -1 : 1) * steps[s / 2][i];
      if (seen.insert(disp).second) out.push_back(w);
    }
  } else {
    out = std::move(all);
  }
  if (exact_length)
    std::erase_if(out, [k](const Word& w) { return static_cast<int>(w.length()) != k; });
  return out;
}

}  // namespace wamen
