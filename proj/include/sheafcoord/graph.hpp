#ifndef SHEAFCOORD_GRAPH_HPP
#define SHEAFCOORD_GRAPH_HPP

#include <utility>
#include <vector>

namespace sheafcoord {

/// Undirected edge stored with canonical orientation tail < head.
struct Edge {
  int tail = 0;  ///< smaller endpoint
  int head = 0;  ///< larger endpoint
};

/// Incidence record: which edge touches a node and whether the node is the
/// canonical tail of that edge.
struct Incidence {
  int edge = 0;
  bool is_tail = false;
};

/// Finite undirected graph with no self-loops and no duplicate edges.
///
/// Edges are canonically oriented (tail < head) on construction; all
/// orientation-dependent signs elsewhere in the library derive from this
/// convention.
class Graph {
public:
  Graph(int node_count, const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }

  /// Neighbor list N_i, sorted ascending.
  const std::vector<int>& neighbors(int i) const {
    return neighbors_[static_cast<size_t>(i)];
  }

  /// Edges incident to node i, with tail/head role.
  const std::vector<Incidence>& incidences(int i) const {
    return incidences_[static_cast<size_t>(i)];
  }

  /// Index of edge {i, j}, or -1 if absent.
  int find_edge(int i, int j) const;

  bool connected() const;

  /// Complete graph K_n.
  static Graph complete(int n);
  /// Path graph P_n on n vertices (n - 1 edges).
  static Graph path(int n);

private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<Incidence>> incidences_;
};

}  // namespace sheafcoord

#endif  // SHEAFCOORD_GRAPH_HPP
