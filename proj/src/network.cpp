#include "mesonet/network.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
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

struct CompactVector {
  std::vector<std::uint32_t> ids;
  std::vector<double> weights;
  double norm = 0.0;
};

double sparse_dot(const CompactVector& a, const CompactVector& b) {
  double dot = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.ids.size() && j < b.ids.size()) {
    if (a.ids[i] == b.ids[j]) {
      dot += a.weights[i] * b.weights[j];
      ++i;
      ++j;
    } else if (a.ids[i] < b.ids[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return dot;
}

// Strict weak order: heavier first, then smaller (source, target).
bool heavier(const Edge& a, const Edge& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  if (a.source != b.source) return a.source < b.source;
  return a.target < b.target;
}

void require_complete(const MesoNetwork& net) {
  const std::size_t n = net.node_count;
  if (net.pruned || net.edges.size() != n * (n - 1) / 2) {
    throw std::invalid_argument("pruning needs a complete weighted network");
  }
}

void require_feasible(const MesoNetwork& net, double k) {
  const double limit = static_cast<double>(net.node_count) - 1.0;
  if (!(k > 0.0) || !(k < limit)) {
    std::ostringstream msg;
    msg << "average degree " << k << " is infeasible for " << net.node_count
        << " nodes (need 0 < k < " << limit << ")";
    throw InfeasibleDegreeError(msg.str());
  }
}

MesoNetwork take_top(const MesoNetwork& net, const std::vector<std::uint32_t>& order,
                     std::size_t count, double k) {
  MesoNetwork out;
  out.node_count = net.node_count;
  out.pruned = true;
  out.target_k = k;
  out.edges.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Edge& e = net.edges[order[i]];
    out.edges.push_back(Edge{e.source, e.target, 1.0});
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  return out;
}

}  // namespace

double MesoNetwork::average_degree() const {
  return node_count == 0 ? 0.0 : 2.0 * static_cast<double>(edges.size()) / node_count;
}

MesoNetwork build_weighted(std::span<const TermWeightVector> vectors, unsigned jobs) {
  const std::size_t n = vectors.size();
  if (n < 2) throw std::invalid_argument("a mesoscopic network needs at least two windows");

  // Re-encode terms as integer ids in lexicographic order so that the
  // sorted-merge dot product avoids string comparisons.
  std::vector<std::string_view> vocab;
  for (const auto& v : vectors)
    for (const auto& [term, w] : v.weights) vocab.push_back(term);
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

  std::vector<CompactVector> compact(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto cursor = vocab.begin();
    double sum = 0.0;
    for (const auto& [term, w] : vectors[i].weights) {
      cursor = std::lower_bound(cursor, vocab.end(), std::string_view(term));
      compact[i].ids.push_back(static_cast<std::uint32_t>(cursor - vocab.begin()));
      compact[i].weights.push_back(w);
      sum += w * w;
    }
    compact[i].norm = std::sqrt(sum);
  }

  MesoNetwork net;
  net.node_count = n;
  net.edges.resize(n * (n - 1) / 2);
  auto row_offset = [n](std::size_t i) { return i * (2 * n - i - 1) / 2; };
  auto fill_row = [&](std::size_t i) {
    std::size_t base = row_offset(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      double w = 0.0;
      if (compact[i].norm > 0.0 && compact[j].norm > 0.0) {
        w = std::clamp(sparse_dot(compact[i], compact[j]) /
                           (compact[i].norm * compact[j].norm),
                       0.0, 1.0);
      }
      net.edges[base + (j - i - 1)] =
          Edge{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), w};
    }
  };

  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fill_row(i);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < n; i += jobs) fill_row(i);
      });
    }
  }
  return net;
}

std::size_t pruned_edge_count(std::size_t node_count, double k_target) {
  return static_cast<std::size_t>(std::floor(k_target * static_cast<double>(node_count) / 2.0));
}

MesoNetwork prune_to_avg_degree(const MesoNetwork& net, double k_target) {
  require_complete(net);
  require_feasible(net, k_target);
  const std::size_t keep = pruned_edge_count(net.node_count, k_target);
  std::vector<std::uint32_t> order(net.edges.size());
  std::iota(order.begin(), order.end(), 0u);
  auto cmp = [&](std::uint32_t a, std::uint32_t b) { return heavier(net.edges[a], net.edges[b]); };
  if (keep < order.size()) {
    std::nth_element(order.begin(), order.begin() + keep, order.end(), cmp);
  }
  return take_top(net, order, keep, k_target);
}

std::map<double, MesoNetwork> sweep_prune(const MesoNetwork& net,
                                          std::span<const double> k_values) {
  std::map<double, MesoNetwork> out;
  if (k_values.empty()) return out;
  require_complete(net);
  for (double k : k_values) require_feasible(net, k);

  std::vector<std::uint32_t> order(net.edges.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return heavier(net.edges[a], net.edges[b]);
  });
  for (double k : k_values) {
    out.emplace(k, take_top(net, order, pruned_edge_count(net.node_count, k), k));
  }
  return out;
}

void write_edge_list(std::ostream& out, const MesoNetwork& net) {
  out << "# mesonet nodes=" << net.node_count << " pruned=" << (net.pruned ? 1 : 0);
  if (net.target_k) out << " target_k=" << io::format_double(*net.target_k);
  out << '\n';
  for (const auto& e : net.edges) {
    out << e.source << ' ' << e.target;
    if (!net.pruned) out << ' ' << io::format_double(e.weight);
    out << '\n';
  }
}

MesoNetwork read_edge_list(std::istream& in) {
  MesoNetwork net;
  bool have_header = false;
  std::size_t max_node = 0;
  bool any_edge = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = io::trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      std::istringstream header{std::string(t.substr(1))};
      std::string token;
      header >> token;
      if (token != "mesonet") continue;
      have_header = true;
      while (header >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        std::string key = token.substr(0, eq), value = token.substr(eq + 1);
        try {
          if (key == "nodes") net.node_count = std::stoul(value);
          else if (key == "pruned") net.pruned = value == "1";
          else if (key == "target_k") net.target_k = std::stod(value);
        } catch (const std::exception&) {
          throw ParseError("bad header field '" + token + "'", line_no);
        }
      }
      continue;
    }
    std::istringstream row{std::string(t)};
    long long i = -1, j = -1;
    double w = 1.0;
    if (!(row >> i >> j) || i < 0 || j < 0) throw ParseError("expected 'i j [weight]'", line_no);
    if (!(row >> w)) w = 1.0;
    if (i == j) throw ParseError("self-loop", line_no);
    auto a = static_cast<std::uint32_t>(std::min(i, j));
    auto b = static_cast<std::uint32_t>(std::max(i, j));
    net.edges.push_back(Edge{a, b, w});
    max_node = std::max<std::size_t>(max_node, b);
    any_edge = true;
  }
  if (!have_header) {
    net.node_count = any_edge ? max_node + 1 : 0;
    net.pruned = std::all_of(net.edges.begin(), net.edges.end(),
                             [](const Edge& e) { return e.weight == 1.0; });
  } else if (any_edge && max_node >= net.node_count) {
    throw ParseError("edge endpoint exceeds declared node count", line_no);
  }
  std::sort(net.edges.begin(), net.edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  return net;
}

void write_graphml(std::ostream& out, const MesoNetwork& net) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"order\" for=\"node\" attr.name=\"order\" attr.type=\"int\"/>\n";
  if (!net.pruned) {
    out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
  }
  out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (std::size_t i = 0; i < net.node_count; ++i) {
    out << "    <node id=\"n" << i << "\"><data key=\"order\">" << i << "</data></node>\n";
  }
  for (const auto& e : net.edges) {
    out << "    <edge source=\"n" << e.source << "\" target=\"n" << e.target << "\"";
    if (net.pruned) {
      out << "/>\n";
    } else {
      out << "><data key=\"weight\">" << io::format_double(e.weight) << "</data></edge>\n";
    }
  }
  out << "  </graph>\n</graphml>\n";
}

}  // namespace mesonet
