#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wamen {

using VertexId = std::uint32_t;
using Label = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Symmetric generating set: every label has an inverse label in the set.
/// Involutions (a label that is its own inverse) are allowed.
class GeneratorSet {
 public:
  GeneratorSet() = default;

  /// Each pair is (label, inverse label). A pair may be listed from either
  /// side or both; the result must be closed under inversion. Throws
  /// InvariantError on inconsistent pairings, duplicate labels, or reserved
  /// names ("e", anything containing ',' or '|').
  static GeneratorSet from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Label s) const { return names_[s]; }
  Label inverse(Label s) const { return inverse_[s]; }
  std::optional<Label> find(std::string_view name) const;
  Label at(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Label> inverse_;
};

/// A product s_1 s_2 ... s_m of generators. It acts on the left, so the last
/// letter is applied first. The empty word is the identity.
struct Word {
  std::vector<Label> letters;

  std::size_t length() const { return letters.size(); }
  bool is_identity() const { return letters.empty(); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() <=> b.letters.size();
    return a.letters <=> b.letters;
  }
};

Word inverse(const Word& w, const GeneratorSet& gens);
Word concat(const Word& g, const Word& h);

/// Labels joined by ','; the identity prints as "e".
std::string format_word(const Word& w, const GeneratorSet& gens);
Word parse_word(std::string_view text, const GeneratorSet& gens);

/// Sorted, duplicate-free list of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts and deduplicates.
  explicit VertexSet(std::vector<VertexId> members);

  static VertexSet from_sorted(std::vector<VertexId> members);
  static VertexSet from_mask(std::span<const char> mask);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(VertexId v) const;
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  VertexId operator[](std::size_t i) const { return members_[i]; }
  const std::vector<VertexId>& ids() const { return members_; }

  /// Indicator vector over [0, n).
  std::vector<char> mask(std::size_t n) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);

/// Where a window came from. Lattice windows carry the step vectors of their
/// generators (label "+i" is step i, "-i" its negative).
struct Family {
  enum class Kind { lattice, free_group, custom };
  Kind kind = Kind::custom;
  int dim = 0;
  int rank = 0;
  int radius = -1;
  std::vector<std::vector<int>> steps;

  friend bool operator==(const Family&, const Family&) = default;
};

std::string to_string(Family::Kind kind);

struct Edge {
  VertexId from;
  VertexId to;
  Label label;
};

/// Finite window of a Schreier graph: every label acts as a partial bijection
/// and the interior vertices carry a full star. Immutable once built.
class LabeledGraph {
 public:
  /// `action[v * gens.size() + s]` is s·v or kNoVertex. Validates every
  /// invariant and throws InvariantError on breach.
  LabeledGraph(GeneratorSet gens, std::vector<std::string> names, std::vector<VertexId> action,
               VertexSet interior, Family family = {});

  std::size_t num_vertices() const { return names_.size(); }
  const GeneratorSet& generators() const { return gens_; }
  const Family& family() const { return family_; }

  VertexId step(VertexId v, Label s) const { return action_[static_cast<std::size_t>(v) * gens_.size() + s]; }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  bool is_interior(VertexId v) const { return interior_mask_[v] != 0; }
  const VertexSet& interior() const { return interior_; }

  const std::string& name(VertexId v) const { return names_[v]; }
  std::optional<VertexId> find(std::string_view name) const;
  /// Throws InvariantError for unknown names.
  VertexId at(std::string_view name) const;

  std::size_t degree_bound() const { return degree_bound_; }
  std::size_t num_edges() const;  // undirected, self-loops excluded
  std::vector<Edge> edges() const;  // every defined labeled step
  VertexSet all_vertices() const;

  /// Integer coordinates of a lattice-window vertex.
  std::span<const int> coords(VertexId v) const;
  std::optional<VertexId> lattice_vertex(std::span<const int> coords) const;

 private:
  GeneratorSet gens_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<VertexId> action_;
  VertexSet interior_;
  std::vector<char> interior_mask_;
  Family family_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::size_t degree_bound_ = 0;
  std::vector<int> coords_;
};

/// Ball of the given radius around the identity, interior = ball of radius - 1.
/// Lattice families use the unit steps unless `family.steps` is set.
LabeledGraph build_cayley_window(const Family& family, int radius);
LabeledGraph build_lattice_window(int dim, int radius);
LabeledGraph build_free_window(int rank, int radius);

/// Identity vertex of a built-in window ("e" or the origin).
VertexId identity_vertex(const LabeledGraph& g);

std::optional<VertexId> apply_word(const LabeledGraph& g, const Word& word, VertexId v);
/// gF, or nullopt if some point leaves the window.
std::optional<VertexSet> translate(const LabeledGraph& g, const Word& word, const VertexSet& set);

/// Points of F with a neighbor outside F. Requires F inside the interior.
VertexSet boundary(const LabeledGraph& g, const VertexSet& set);

/// Graph distance from `sources`, -1 where larger than max_depth.
std::vector<int> distances_from(const LabeledGraph& g, const VertexSet& sources, int max_depth);
VertexSet neighborhood(const LabeledGraph& g, const VertexSet& set, int r);
VertexSet ball(const LabeledGraph& g, VertexId center, int r);
/// spheres[i] = points at distance exactly i, 0 <= i <= r.
std::vector<VertexSet> spheres(const LabeledGraph& g, VertexId center, int r);

/// Connected components of the subgraph induced on V \ removed, ordered by
/// smallest member.
std::vector<VertexSet> components(const LabeledGraph& g, const VertexSet& removed);
/// Same, for the subgraph induced on `within` \ removed.
std::vector<VertexSet> components_within(const LabeledGraph& g, const VertexSet& within, const VertexSet& removed);
std::size_t max_component_size(const LabeledGraph& g, const VertexSet& within, const VertexSet& removed);

/// True when every vertex at distance < depth from `set` is interior, so
/// distances up to `depth` from the set agree with the infinite graph.
bool neighborhood_is_faithful(const LabeledGraph& g, const VertexSet& set, int depth);

/// Freely reduced words of length <= k (or exactly k), shortlex order. Words
/// equal as lattice elements are merged for lattice families.
std::vector<Word> words_up_to(const LabeledGraph& g, int k, bool exact_length = false);

/// Single-letter words for every generator.
std::vector<Word> generator_words(const GeneratorSet& gens);

}  // namespace wamen
