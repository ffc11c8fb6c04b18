#ifndef MESONET_GRAPH_HPP
#define MESONET_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mesonet/network.hpp"

namespace mesonet {

using NodeId = std::uint32_t;

// Simple undirected graph with sorted adjacency lists. Weights are ignored.
class Graph {
 public:
  Graph() = default;
  // Duplicate edges collapse; self-loops throw std::invalid_argument.
  Graph(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges);
  explicit Graph(const MesoNetwork& net);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
  bool has_edge(NodeId u, NodeId v) const;

  // Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

 private:
  void finish();

  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

}  // namespace mesonet

#endif  // MESONET_GRAPH_HPP
