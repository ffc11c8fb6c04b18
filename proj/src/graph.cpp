#include "mesonet/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace mesonet {

Graph::Graph(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges)
    : adjacency_(node_count) {
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (u >= node_count || v >= node_count) throw std::out_of_range("edge endpoint out of range");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  finish();
}

Graph::Graph(const MesoNetwork& net) : adjacency_(net.node_count) {
  for (const auto& e : net.edges) {
    if (e.source == e.target) throw std::invalid_argument("self-loops are not allowed");
    adjacency_[e.source].push_back(e.target);
    adjacency_[e.target].push_back(e.source);
  }
  finish();
}

void Graph::finish() {
  edge_count_ = 0;
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    edge_count_ += adj.size();
  }
  edge_count_ /= 2;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& a = adjacency_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u)
    for (NodeId v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

}  // namespace mesonet
