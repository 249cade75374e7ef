#include "wamen/max_flow.hpp"

#include <deque>

#include "wamen/error.hpp"

namespace wamen {

FlowNetwork::FlowNetwork(std::size_t nodes) : head_(nodes) {}

std::size_t FlowNetwork::add_arc(std::size_t from, std::size_t to, Integer capacity) {
  if (capacity < 0) throw InvariantError("negative arc capacity");
  std::size_t index = arcs_.size() / 2;
  head_[from].push_back(arcs_.size());
  arcs_.push_back({to, std::move(capacity), 0});
  head_[to].push_back(arcs_.size());
  arcs_.push_back({from, 0, 0});
  return index;
}

bool FlowNetwork::build_levels(std::size_t source, std::size_t sink) {
  level_.assign(head_.size(), -1);
  std::deque<std::size_t> queue{source};
  level_[source] = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t a : head_[v]) {
      const Arc& arc = arcs_[a];
      if (level_[arc.to] < 0 && arc.flow < arc.capacity) {
        level_[arc.to] = level_[v] + 1;
        queue.push_back(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

Integer FlowNetwork::push(std::size_t v, std::size_t sink, const Integer& limit) {
  if (v == sink) return limit;
  for (std::size_t& i = cursor_[v]; i < head_[v].size(); ++i) {
    std::size_t a = head_[v][i];
    Arc& arc = arcs_[a];
    if (level_[arc.to] != level_[v] + 1 || arc.flow >= arc.capacity) continue;
    Integer room = arc.capacity - arc.flow;
    Integer pushed = push(arc.to, sink, room < limit ? room : limit);
    if (pushed > 0) {
      arc.flow += pushed;
      arcs_[a ^ 1].flow -= pushed;
      return pushed;
    }
  }
  return 0;
}

Integer FlowNetwork::solve(std::size_t source, std::size_t sink) {
  // Reverse arcs start with capacity 0; a negative flow on them is residual room.
  Integer total = 0;
  Integer unbounded = 1;
  for (std::size_t a = 0; a < arcs_.size(); a += 2) unbounded += arcs_[a].capacity;
  while (build_levels(source, sink)) {
    cursor_.assign(head_.size(), 0);
    while (true) {
      Integer pushed = push(source, sink, unbounded);
      if (pushed == 0) break;
      total += pushed;
    }
  }
  return total;
}

std::vector<char> FlowNetwork::residual_reachable(std::size_t source) const {
  std::vector<char> seen(head_.size(), 0);
  std::deque<std::size_t> queue{source};
  seen[source] = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t a : head_[v]) {
      const Arc& arc = arcs_[a];
      if (!seen[arc.to] && arc.flow < arc.capacity) {
        seen[arc.to] = 1;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

}  // namespace wamen
