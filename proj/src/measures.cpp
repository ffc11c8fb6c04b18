#include "mesonet/measures.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "mesonet/error.hpp"
#include "mesonet/io.hpp"

namespace mesonet {
namespace {

constexpr std::array<std::string_view, 11> kMeasureNames = {
    "degree",
    "avg_neighbor_degree",
    "clustering",
    "accessibility_h2",
    "accessibility_h3",
    "symmetry_backbone_h2",
    "symmetry_backbone_h3",
    "symmetry_backbone_h4",
    "symmetry_merged_h2",
    "symmetry_merged_h3",
    "symmetry_merged_h4",
};

// exp(H) of the distribution proportional to `masses` (all positive).
double exp_entropy(std::span<const double> masses) {
  double total = 0.0;
  for (double m : masses) total += m;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double m : masses) {
    double p = m / total;
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::exp(h);
}

// Scratch space for per-node neighborhood computations. Every array is
// sized to the graph and restored to its neutral state after use, so one
// workspace serves many source nodes.
class Workspace {
 public:
  explicit Workspace(std::size_t n)
      : dist_(n, -1), parent_(n), mass_(n, 0.0), visited_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
  }

  double accessibility(const Graph& g, NodeId source, int h) {
    if (h < 1) throw std::invalid_argument("accessibility needs h >= 1");
    if (g.degree(source) == 0) return 0.0;
    touched_.clear();
    visited_[source] = 1;
    walk(g, source, 0, h, 1.0);
    visited_[source] = 0;

    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
    std::vector<double> masses;
    masses.reserve(touched_.size());
    for (NodeId v : touched_) {
      masses.push_back(mass_[v]);
      mass_[v] = 0.0;
    }
    return exp_entropy(masses);
  }

  // Symmetry for h = 1..h_max and both variants, sharing one BFS.
  // result[variant][h - 1].
  std::array<std::vector<double>, 2> symmetry(const Graph& g, NodeId source, int h_max) {
    if (h_max < 1) throw std::invalid_argument("symmetry needs h >= 1");
    std::array<std::vector<double>, 2> result{std::vector<double>(h_max, 0.0),
                                              std::vector<double>(h_max, 0.0)};
    if (g.degree(source) == 0) return result;

    auto levels = bfs_levels(g, source, h_max);
    result[0] = outward_profile(g, levels, h_max, false);
    result[1] = outward_profile(g, levels, h_max, true);
    for (const auto& level : levels)
      for (NodeId v : level) dist_[v] = -1;
    return result;
  }

  std::vector<std::vector<NodeId>> bfs_levels(const Graph& g, NodeId source, int h_max) {
    std::vector<std::vector<NodeId>> levels(h_max + 1);
    levels[0].push_back(source);
    dist_[source] = 0;
    for (int l = 0; l < h_max; ++l) {
      for (NodeId v : levels[l]) {
        for (NodeId u : g.neighbors(v)) {
          if (dist_[u] < 0) {
            dist_[u] = l + 1;
            levels[l + 1].push_back(u);
          }
        }
      }
      std::sort(levels[l + 1].begin(), levels[l + 1].end());
    }
    return levels;
  }

  void clear_levels(const std::vector<std::vector<NodeId>>& levels) {
    for (const auto& level : levels)
      for (NodeId v : level) dist_[v] = -1;
  }

 private:
  void walk(const Graph& g, NodeId v, int depth, int h, double p) {
    std::size_t open = 0;
    for (NodeId u : g.neighbors(v)) open += visited_[u] ? 0 : 1;
    if (open == 0) return;  // stuck: this mass is discarded
    const double share = p / static_cast<double>(open);
    if (depth + 1 == h) {
      for (NodeId u : g.neighbors(v)) {
        if (visited_[u]) continue;
        if (mass_[u] == 0.0) touched_.push_back(u);
        mass_[u] += share;
      }
      return;
    }
    for (NodeId u : g.neighbors(v)) {
      if (visited_[u]) continue;
      visited_[u] = 1;
      walk(g, u, depth + 1, h, share);
      visited_[u] = 0;
    }
  }

  NodeId find(NodeId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // Outward level-to-level flow; returns symmetry for h = 1..h_max. Expects
  // dist_ to hold the BFS levels.
  std::vector<double> outward_profile(const Graph& g,
                                      const std::vector<std::vector<NodeId>>& levels,
                                      int h_max, bool merged) {
    // Group the nodes of each level into entities: singletons for backbone,
    // connected same-level groups for merged (represented by the smallest id).
    if (merged) {
      for (const auto& level : levels) {
        for (NodeId v : level) {
          for (NodeId u : g.neighbors(v)) {
            if (u > v && dist_[u] == dist_[v]) {
              NodeId a = find(u), b = find(v);
              if (a != b) parent_[std::max(a, b)] = std::min(a, b);
            }
          }
        }
      }
    }
    auto entity = [&](NodeId v) { return merged ? find(v) : v; };

    std::vector<std::vector<NodeId>> entities(levels.size());
    for (std::size_t l = 0; l < levels.size(); ++l) {
      for (NodeId v : levels[l])
        if (entity(v) == v) entities[l].push_back(v);
    }

    // dead_mass[l] holds the masses absorbed by dead ends at level l.
    std::vector<std::vector<double>> dead_mass(levels.size());
    mass_[levels[0][0]] = 1.0;
    std::vector<NodeId> targets;
    for (int l = 0; l < h_max; ++l) {
      // Collect each entity's distinct outward targets.
      std::map<NodeId, std::vector<NodeId>> outward;
      for (NodeId v : levels[l]) {
        NodeId e = entity(v);
        auto& out = outward[e];
        for (NodeId u : g.neighbors(v))
          if (dist_[u] == l + 1) out.push_back(entity(u));
      }
      for (NodeId e : entities[l]) {
        auto& out = outward[e];
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        const double m = mass_[e];
        if (out.empty()) {
          dead_mass[l].push_back(m);
        } else {
          const double share = m / static_cast<double>(out.size());
          for (NodeId t : out) mass_[t] += share;
        }
      }
    }

    std::vector<double> profile(h_max, 0.0);
    std::vector<double> masses;
    for (int h = 1; h <= h_max; ++h) {
      masses.clear();
      std::size_t dead = 0;
      for (int l = 0; l < h; ++l) {
        for (double m : dead_mass[l]) {
          masses.push_back(m);
          ++dead;
        }
      }
      std::size_t reached = 0;
      for (NodeId e : entities[h]) {
        if (mass_[e] > 0.0) {
          masses.push_back(mass_[e]);
          ++reached;
        }
      }
      if (reached + dead == 0) continue;
      profile[h - 1] = exp_entropy(masses) / static_cast<double>(reached + dead);
    }

    for (const auto& level : levels) {
      for (NodeId v : level) {
        mass_[v] = 0.0;
        parent_[v] = v;
      }
    }
    return profile;
  }

  std::vector<int> dist_;
  std::vector<NodeId> parent_;
  std::vector<double> mass_;
  std::vector<char> visited_;
  std::vector<NodeId> touched_;
};

bool column_is_constant(std::span<const double> values) {
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *lo == *hi;
}

}  // namespace

DistributionStats aggregate(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("cannot aggregate an empty distribution");
  const double n = static_cast<double>(values.size());
  // Neumaier-compensated sums keep the moments accurate for long lists.
  auto compensated_sum = [&](auto term) {
    double sum = 0.0, c = 0.0;
    for (double x : values) {
      double t = term(x);
      double s = sum + t;
      c += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
      sum = s;
    }
    return sum + c;
  };
  DistributionStats s;
  s.mean = compensated_sum([](double x) { return x; }) / n;
  if (column_is_constant(values)) {
    s.mean = values.front();
    return s;
  }
  const double mu = s.mean;
  double m2 = compensated_sum([mu](double x) { return (x - mu) * (x - mu); }) / n;
  double m3 = compensated_sum([mu](double x) { return (x - mu) * (x - mu) * (x - mu); }) / n;
  s.std = std::sqrt(m2);
  s.skewness = s.std > 0.0 ? m3 / (m2 * s.std) : 0.0;
  return s;
}

DistributionStats degree_stats(const Graph& g) {
  std::vector<double> degrees(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) degrees[v] = static_cast<double>(g.degree(v));
  return aggregate(degrees);
}

double avg_neighbor_degree(const Graph& g, NodeId node) {
  auto nbrs = g.neighbors(node);
  if (nbrs.empty()) return 0.0;
  double sum = 0.0;
  for (NodeId u : nbrs) sum += static_cast<double>(g.degree(u));
  return sum / static_cast<double>(nbrs.size());
}

Assortativity assortativity(const Graph& g) {
  Assortativity result;
  if (g.edge_count() == 0) {
    result.degenerate = true;
    return result;
  }
  // Both orientations make the two endpoint marginals identical, so one
  // mean and one variance suffice.
  double sum = 0.0, count = 0.0;
  std::size_t min_deg = SIZE_MAX, max_deg = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) continue;
    const double d = static_cast<double>(g.degree(v));
    sum += d * d;  // node v appears as an endpoint deg(v) times
    count += d;
    min_deg = std::min(min_deg, g.degree(v));
    max_deg = std::max(max_deg, g.degree(v));
  }
  if (min_deg == max_deg) {
    result.degenerate = true;
    return result;
  }
  const double mu = sum / count;
  double var = 0.0, cov = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const double dv = static_cast<double>(g.degree(v)) - mu;
    for (NodeId u : g.neighbors(v)) {
      const double du = static_cast<double>(g.degree(u)) - mu;
      var += dv * dv;
      cov += dv * du;
    }
  }
  result.value = std::clamp(cov / var, -1.0, 1.0);
  return result;
}

double clustering(const Graph& g, NodeId node) {
  auto nbrs = g.neighbors(node);
  const std::size_t k = nbrs.size();
  if (k < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t i = 0; i < k; ++i) {
    // Count neighbors of nbrs[i] that are also neighbors of `node` with a
    // larger id; sorted merge over the two adjacency lists.
    auto other = g.neighbors(nbrs[i]);
    auto a = nbrs.begin() + static_cast<std::ptrdiff_t>(i) + 1;
    auto b = std::upper_bound(other.begin(), other.end(), nbrs[i]);
    while (a != nbrs.end() && b != other.end()) {
      if (*a == *b) {
        ++links;
        ++a;
        ++b;
      } else if (*a < *b) {
        ++a;
      } else {
        ++b;
      }
    }
  }
  return static_cast<double>(links) / (static_cast<double>(k) * (k - 1) / 2.0);
}

std::vector<std::vector<NodeId>> concentric_levels(const Graph& g, NodeId node, int h_max) {
  if (h_max < 0) throw std::invalid_argument("h_max must be >= 0");
  Workspace ws(g.node_count());
  auto levels = ws.bfs_levels(g, node, h_max);
  ws.clear_levels(levels);
  return levels;
}

double accessibility(const Graph& g, NodeId node, int h) {
  Workspace ws(g.node_count());
  return ws.accessibility(g, node, h);
}

double symmetry(const Graph& g, NodeId node, int h, SymmetryVariant variant) {
  Workspace ws(g.node_count());
  auto profile = ws.symmetry(g, node, h);
  return profile[variant == SymmetryVariant::backbone ? 0 : 1][h - 1];
}

std::string_view measure_name(NodeMeasure m) {
  return kMeasureNames[static_cast<std::size_t>(m)];
}

std::optional<NodeMeasure> parse_measure(std::string_view name) {
  for (std::size_t i = 0; i < kMeasureNames.size(); ++i) {
    if (kMeasureNames[i] == name) return static_cast<NodeMeasure>(i);
  }
  return std::nullopt;
}

std::span<const double> NodeMeasureTable::column(NodeMeasure m) const {
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (measures[i] == m) return columns[i];
  }
  throw std::out_of_range("measure '" + std::string(measure_name(m)) + "' not computed");
}

NodeMeasureTable measure_network(const Graph& g, std::span<const NodeMeasure> measures,
                                 unsigned jobs) {
  const std::size_t n = g.node_count();
  NodeMeasureTable table;
  table.node_count = n;
  table.measures.assign(measures.begin(), measures.end());
  table.columns.assign(measures.size(), std::vector<double>(n, 0.0));
  table.isolated.resize(n);
  table.assortativity = assortativity(g);
  for (NodeId v = 0; v < n; ++v) table.isolated[v] = g.degree(v) == 0;

  int symmetry_depth = 0;
  for (auto m : measures) {
    switch (m) {
      case NodeMeasure::symmetry_backbone_h4:
      case NodeMeasure::symmetry_merged_h4: symmetry_depth = std::max(symmetry_depth, 4); break;
      case NodeMeasure::symmetry_backbone_h3:
      case NodeMeasure::symmetry_merged_h3: symmetry_depth = std::max(symmetry_depth, 3); break;
      case NodeMeasure::symmetry_backbone_h2:
      case NodeMeasure::symmetry_merged_h2: symmetry_depth = std::max(symmetry_depth, 2); break;
      default: break;
    }
  }

  auto measure_node = [&](Workspace& ws, NodeId v) {
    std::array<std::vector<double>, 2> sym;
    if (symmetry_depth > 0) sym = ws.symmetry(g, v, symmetry_depth);
    for (std::size_t c = 0; c < measures.size(); ++c) {
      double value = 0.0;
      switch (measures[c]) {
        case NodeMeasure::degree: value = static_cast<double>(g.degree(v)); break;
        case NodeMeasure::avg_neighbor_degree: value = avg_neighbor_degree(g, v); break;
        case NodeMeasure::clustering: value = clustering(g, v); break;
        case NodeMeasure::accessibility_h2: value = ws.accessibility(g, v, 2); break;
        case NodeMeasure::accessibility_h3: value = ws.accessibility(g, v, 3); break;
        case NodeMeasure::symmetry_backbone_h2: value = sym[0][1]; break;
        case NodeMeasure::symmetry_backbone_h3: value = sym[0][2]; break;
        case NodeMeasure::symmetry_backbone_h4: value = sym[0][3]; break;
        case NodeMeasure::symmetry_merged_h2: value = sym[1][1]; break;
        case NodeMeasure::symmetry_merged_h3: value = sym[1][2]; break;
        case NodeMeasure::symmetry_merged_h4: value = sym[1][3]; break;
      }
      table.columns[c][v] = value;
    }
  };

  jobs = std::max(1u, jobs);
  if (jobs == 1 || n < 2) {
    Workspace ws(n);
    for (NodeId v = 0; v < n; ++v) measure_node(ws, v);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] {
        Workspace ws(n);
        for (std::size_t v = t; v < n; v += jobs) measure_node(ws, static_cast<NodeId>(v));
      });
    }
  }
  return table;
}

void write_measure_csv(std::ostream& out, const NodeMeasureTable& table) {
  out << "node";
  for (auto m : table.measures) out << ',' << measure_name(m);
  out << ",isolated\n";
  for (std::size_t v = 0; v < table.node_count; ++v) {
    out << v;
    for (const auto& col : table.columns) out << ',' << io::format_double(col[v]);
    out << ',' << (table.isolated[v] ? 1 : 0) << '\n';
  }
}

void write_measure_scalars(std::ostream& out, const NodeMeasureTable& table) {
  std::size_t isolated = static_cast<std::size_t>(
      std::count(table.isolated.begin(), table.isolated.end(), true));
  out << "nodes=" << table.node_count << '\n'
      << "isolated_nodes=" << isolated << '\n'
      << "assortativity=" << io::format_double(table.assortativity.value) << '\n'
      << "assortativity_degenerate=" << (table.assortativity.degenerate ? 1 : 0) << '\n';
}

NodeMeasureTable read_measure_tables(std::istream& csv, std::istream& scalars) {
  NodeMeasureTable table;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(csv, line)) throw ParseError("empty measurement file", 1);
  ++line_no;
  auto header = io::split_csv_line(io::trim(line));
  if (header.size() < 2 || header.front() != "node" || header.back() != "isolated") {
    throw ParseError("bad measurement header", line_no);
  }
  for (std::size_t i = 1; i + 1 < header.size(); ++i) {
    auto m = parse_measure(header[i]);
    if (!m) throw ParseError("unknown measure '" + header[i] + "'", line_no);
    table.measures.push_back(*m);
  }
  table.columns.resize(table.measures.size());
  while (std::getline(csv, line)) {
    ++line_no;
    auto t = io::trim(line);
    if (t.empty()) continue;
    auto fields = io::split_csv_line(t);
    if (fields.size() != header.size()) throw ParseError("wrong field count", line_no);
    try {
      for (std::size_t c = 0; c < table.measures.size(); ++c) {
        table.columns[c].push_back(std::stod(fields[c + 1]));
      }
    } catch (const std::exception&) {
      throw ParseError("bad number", line_no);
    }
    table.isolated.push_back(fields.back() == "1");
  }
  table.node_count = table.isolated.size();

  std::size_t scalar_line = 0;
  while (std::getline(scalars, line)) {
    ++scalar_line;
    auto t = io::trim(line);
    auto eq = t.find('=');
    if (t.empty() || eq == std::string_view::npos) continue;
    std::string key(t.substr(0, eq)), value(t.substr(eq + 1));
    try {
      if (key == "assortativity") table.assortativity.value = std::stod(value);
      if (key == "assortativity_degenerate") table.assortativity.degenerate = value == "1";
    } catch (const std::exception&) {
      throw ParseError("bad scalar '" + key + "'", scalar_line);
    }
  }
  return table;
}

}  // namespace mesonet
