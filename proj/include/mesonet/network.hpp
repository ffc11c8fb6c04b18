#ifndef MESONET_NETWORK_HPP
#define MESONET_NETWORK_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mesonet/vectorize.hpp"

namespace mesonet {

struct Edge {
  std::uint32_t source = 0;  // always < target
  std::uint32_t target = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

// A mesoscopic network over windows 0..node_count-1 in narrative order.
//
// The weighted form is the complete graph with cosine weights; the pruned
// form keeps the highest-weight edges with weight 1. Edges are stored sorted
// by (source, target).
struct MesoNetwork {
  std::size_t node_count = 0;
  std::vector<Edge> edges;
  bool pruned = false;
  std::optional<double> target_k;

  // 2E / N.
  double average_degree() const;
};

// Complete weighted network; edge (i, j) carries cosine(v_i, v_j). The
// O(N^2) similarity pass is split across `jobs` threads without affecting
// the result. Throws std::invalid_argument for fewer than two vectors.
MesoNetwork build_weighted(std::span<const TermWeightVector> vectors,
                           unsigned jobs = 1);

// Keeps exactly floor(k_target * N / 2) edges: those with the highest weight,
// ties going to the lexicographically smaller (source, target). Throws
// InfeasibleDegreeError unless 0 < k_target < N - 1, and
// std::invalid_argument when `net` is not a complete weighted network.
MesoNetwork prune_to_avg_degree(const MesoNetwork& net, double k_target);

// One pruned network per k. Edge sets are nested: a smaller k keeps a subset
// of the edges kept by a larger k.
std::map<double, MesoNetwork> sweep_prune(const MesoNetwork& net,
                                          std::span<const double> k_values);

// Number of edges kept for a target average degree.
std::size_t pruned_edge_count(std::size_t node_count, double k_target);

// Edge list: a `# mesonet nodes=<N> pruned=<0|1> [target_k=<k>]` header,
// then `i j` (pruned) or `i j weight` per line, 0-based.
void write_edge_list(std::ostream& out, const MesoNetwork& net);
MesoNetwork read_edge_list(std::istream& in);

// GraphML with node attribute `order` holding the window index.
void write_graphml(std::ostream& out, const MesoNetwork& net);

}  // namespace mesonet

#endif  // MESONET_NETWORK_HPP
