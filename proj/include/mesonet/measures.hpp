#ifndef MESONET_MEASURES_HPP
#define MESONET_MEASURES_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mesonet/graph.hpp"

namespace mesonet {

// Population moments. skewness is m3 / std^3 and is 0 when std is 0.
struct DistributionStats {
  double mean = 0.0;
  double std = 0.0;
  double skewness = 0.0;
};

// Throws std::invalid_argument on an empty list.
DistributionStats aggregate(std::span<const double> values);

DistributionStats degree_stats(const Graph& g);

// Mean degree of the neighbors of `node`; 0 for an isolated node.
double avg_neighbor_degree(const Graph& g, NodeId node);

struct Assortativity {
  double value = 0.0;
  // True when endpoint degrees have zero variance (regular graphs) or the
  // graph has no edges; value is then 0.
  bool degenerate = false;
};

// Pearson correlation of the degrees at the two ends of every edge, each
// edge counted in both orientations.
Assortativity assortativity(const Graph& g);

// Fraction of neighbor pairs that are adjacent; 0 when degree < 2.
double clustering(const Graph& g, NodeId node);

// levels[l] holds the nodes at shortest-path distance exactly l, for
// l = 0..h_max, each sorted by id. Trailing levels may be empty.
std::vector<std::vector<NodeId>> concentric_levels(const Graph& g, NodeId node,
                                                   int h_max);

// exp of the Shannon entropy of where a self-avoiding walk of exactly h steps
// ends. At every step the walker picks uniformly among neighbors it has not
// visited; walks that get stuck early are discarded and the endpoint
// distribution is renormalized over the walks that complete. Returns 0 when
// no walk completes (in particular for isolated nodes). Walks are enumerated
// exactly.
double accessibility(const Graph& g, NodeId node, int h);

enum class SymmetryVariant { backbone, merged };

// Concentric symmetry on the neighborhood pattern up to level h.
//
// backbone drops edges joining two nodes of the same level; merged contracts
// each connected group of same-level nodes into one node. Probability then
// flows outward from `node`: every (possibly merged) node at level l splits
// its mass evenly over its distinct links to level l+1, and a node without
// such links keeps its mass as a dead end. With P the distribution over the
// level-h nodes plus the dead ends,
//   symmetry = exp(H(P)) / (level-h nodes + dead ends),
// which lies in (0, 1]. Isolated nodes get 0.
double symmetry(const Graph& g, NodeId node, int h, SymmetryVariant variant);

enum class NodeMeasure {
  degree,
  avg_neighbor_degree,
  clustering,
  accessibility_h2,
  accessibility_h3,
  symmetry_backbone_h2,
  symmetry_backbone_h3,
  symmetry_backbone_h4,
  symmetry_merged_h2,
  symmetry_merged_h3,
  symmetry_merged_h4,
};

inline constexpr std::array<NodeMeasure, 11> kAllNodeMeasures = {
    NodeMeasure::degree,               NodeMeasure::avg_neighbor_degree,
    NodeMeasure::clustering,           NodeMeasure::accessibility_h2,
    NodeMeasure::accessibility_h3,     NodeMeasure::symmetry_backbone_h2,
    NodeMeasure::symmetry_backbone_h3, NodeMeasure::symmetry_backbone_h4,
    NodeMeasure::symmetry_merged_h2,   NodeMeasure::symmetry_merged_h3,
    NodeMeasure::symmetry_merged_h4,
};

std::string_view measure_name(NodeMeasure m);
std::optional<NodeMeasure> parse_measure(std::string_view name);

// Per-node measurements of one network plus the graph-level assortativity.
struct NodeMeasureTable {
  std::size_t node_count = 0;
  std::vector<NodeMeasure> measures;
  std::vector<std::vector<double>> columns;  // parallel to `measures`
  std::vector<bool> isolated;
  Assortativity assortativity;

  // Throws std::out_of_range when the measure was not computed.
  std::span<const double> column(NodeMeasure m) const;
};

// Computes the requested measures for every node, splitting nodes across
// `jobs` threads. Results do not depend on `jobs`.
NodeMeasureTable measure_network(
    const Graph& g,
    std::span<const NodeMeasure> measures = kAllNodeMeasures,
    unsigned jobs = 1);

// One row per node (`node,<measure>...,isolated`).
void write_measure_csv(std::ostream& out, const NodeMeasureTable& table);
// Graph-level scalars as key=value lines.
void write_measure_scalars(std::ostream& out, const NodeMeasureTable& table);
NodeMeasureTable read_measure_tables(std::istream& csv, std::istream& scalars);

}  // namespace mesonet

#endif  // MESONET_MEASURES_HPP
