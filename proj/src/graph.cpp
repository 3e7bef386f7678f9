#include "sheafcoord/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace sheafcoord {

Graph::Graph(int node_count, const std::vector<std::pair<int, int>>& edges)
    : node_count_(node_count) {
  if (node_count <= 0) {
    throw std::invalid_argument("Graph: node_count must be positive");
  }
  std::set<std::pair<int, int>> seen;
  edges_.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= node_count || b >= node_count) {
      throw std::invalid_argument("Graph: edge endpoint out of range");
    }
    if (a == b) {
      throw std::invalid_argument("Graph: self-loop at node " + std::to_string(a));
    }
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    if (!seen.insert({lo, hi}).second) {
      throw std::invalid_argument("Graph: duplicate edge {" + std::to_string(lo) +
                                  ", " + std::to_string(hi) + "}");
    }
    edges_.push_back(Edge{lo, hi});
  }
  neighbors_.assign(static_cast<size_t>(node_count), {});
  incidences_.assign(static_cast<size_t>(node_count), {});
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<size_t>(e)];
    neighbors_[static_cast<size_t>(ed.tail)].push_back(ed.head);
    neighbors_[static_cast<size_t>(ed.head)].push_back(ed.tail);
    incidences_[static_cast<size_t>(ed.tail)].push_back({e, true});
    incidences_[static_cast<size_t>(ed.head)].push_back({e, false});
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
}

int Graph::find_edge(int i, int j) const {
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[static_cast<size_t>(e)].tail == lo &&
        edges_[static_cast<size_t>(e)].head == hi) {
      return e;
    }
  }
  return -1;
}

bool Graph::connected() const {
  std::vector<bool> visited(static_cast<size_t>(node_count_), false);
  std::vector<int> stack{0};
  visited[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : neighbors(u)) {
      if (!visited[static_cast<size_t>(v)]) {
        visited[static_cast<size_t>(v)] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == node_count_;
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, edges);
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

}  // namespace sheafcoord
