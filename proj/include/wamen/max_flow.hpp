#pragma once

#include <cstddef>
#include <vector>

#include "wamen/rational.hpp"

namespace wamen {

/// Directed network with arbitrary-precision integer capacities, solved by
/// blocking flows on BFS level graphs. Arcs are scanned in insertion order,
/// so equal inputs give identical flows.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes);

  /// Returns the arc index used by flow().
  std::size_t add_arc(std::size_t from, std::size_t to, Integer capacity);

  Integer solve(std::size_t source, std::size_t sink);

  const Integer& flow(std::size_t arc) const { return arcs_[2 * arc].flow; }
  std::size_t num_nodes() const { return head_.size(); }

  /// Nodes reachable from `source` along arcs with residual capacity.
  std::vector<char> residual_reachable(std::size_t source) const;

 private:
  struct Arc {
    std::size_t to;
    Integer capacity;
    Integer flow;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  Integer push(std::size_t v, std::size_t sink, const Integer& limit);

  std::vector<Arc> arcs_;  // arc 2i forward, 2i+1 its reverse
  std::vector<std::vector<std::size_t>> head_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace wamen
