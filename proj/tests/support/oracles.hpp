// Slow, direct reference implementations used as test oracles. Nothing here
// shares code with the library.
#ifndef MESONET_TESTS_ORACLES_HPP
#define MESONET_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using AdjMatrix = std::vector<std::vector<bool>>;

inline AdjMatrix adjacency(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  AdjMatrix a(n, std::vector<bool>(n, false));
  for (auto [u, v] : edges) a[u][v] = a[v][u] = true;
  return a;
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> random_graph(std::size_t n, double p,
                                                                         std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return edges;
}

inline long double exp_entropy(const std::map<std::size_t, long double>& mass) {
  long double total = 0;
  for (auto& [k, m] : mass) total += m;
  if (total <= 0) return 0;
  long double h = 0;
  for (auto& [k, m] : mass) {
    long double p = m / total;
    if (p > 0) h -= p * std::log(p);
  }
  return std::exp(h);
}

// Every sequence (v1..vh) in V^h is tested for being a self-avoiding walk
// from `s`; its probability is the product of 1/(unvisited neighbours) at
// each step. Stuck prefixes are simply never completed.
inline double saw_accessibility(const AdjMatrix& a, std::size_t s, int h) {
  const std::size_t n = a.size();
  std::map<std::size_t, long double> mass;
  std::vector<std::size_t> seq(h, 0);
  std::size_t total = 1;
  for (int i = 0; i < h; ++i) total *= n;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int i = 0; i < h; ++i) {
      seq[i] = c % n;
      c /= n;
    }
    std::vector<bool> used(n, false);
    used[s] = true;
    std::size_t cur = s;
    long double p = 1;
    bool ok = true;
    for (int i = 0; i < h && ok; ++i) {
      std::size_t open = 0;
      for (std::size_t u = 0; u < n; ++u) open += (a[cur][u] && !used[u]) ? 1 : 0;
      std::size_t next = seq[i];
      if (!a[cur][next] || used[next] || open == 0) {
        ok = false;
        break;
      }
      p /= static_cast<long double>(open);
      used[next] = true;
      cur = next;
    }
    if (ok) mass[cur] += p;
  }
  return static_cast<double>(exp_entropy(mass));
}

// Number of distinct endpoints of complete self-avoiding walks of length h.
inline std::size_t saw_endpoint_count(const AdjMatrix& a, std::size_t s, int h) {
  std::set<std::size_t> ends;
  std::function<void(std::size_t, int, std::vector<bool>&)> go = [&](std::size_t v, int d,
                                                                     std::vector<bool>& used) {
    if (d == h) {
      ends.insert(v);
      return;
    }
    for (std::size_t u = 0; u < a.size(); ++u) {
      if (!a[v][u] || used[u]) continue;
      used[u] = true;
      go(u, d + 1, used);
      used[u] = false;
    }
  };
  std::vector<bool> used(a.size(), false);
  used[s] = true;
  go(s, 0, used);
  return ends.size();
}

// Builds the transformed concentric pattern explicitly (backbone: levels
// only, no intra-level edges; merged: same-level connected groups become
// one vertex) and enumerates every outward path from the root. A path ends
// when it reaches level h or a vertex with no link to the next level.
inline double symmetry(const AdjMatrix& a, std::size_t s, int h, bool merged) {
  const std::size_t n = a.size();
  std::vector<int> level(n, -1);
  level[s] = 0;
  for (int l = 0; l < h; ++l)
    for (std::size_t v = 0; v < n; ++v)
      if (level[v] == l)
        for (std::size_t u = 0; u < n; ++u)
          if (a[v][u] && level[u] < 0) level[u] = l + 1;

  // Group label per node: itself, or the smallest node of its same-level
  // component (found by repeated relaxation).
  std::vector<std::size_t> group(n);
  for (std::size_t v = 0; v < n; ++v) group[v] = v;
  if (merged) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < n; ++u)
          if (a[v][u] && level[v] >= 0 && level[v] == level[u] && group[u] < group[v]) {
            group[v] = group[u];
            changed = true;
          }
    }
  }
  std::map<std::size_t, std::set<std::size_t>> out;  // group -> next-level groups
  std::set<std::size_t> groups;
  for (std::size_t v = 0; v < n; ++v) {
    if (level[v] < 0) continue;
    groups.insert(group[v]);
    for (std::size_t u = 0; u < n; ++u)
      if (a[v][u] && level[u] == level[v] + 1) out[group[v]].insert(group[u]);
  }
  auto level_of = [&](std::size_t g) { return level[g]; };

  std::map<std::size_t, long double> end_mass;
  std::function<void(std::size_t, long double)> go = [&](std::size_t g, long double p) {
    if (level_of(g) == h) {
      end_mass[g] += p;
      return;
    }
    const auto& next = out[g];
    if (next.empty()) {
      end_mass[g] += p;  // dead end
      return;
    }
    for (auto t : next) go(t, p / static_cast<long double>(next.size()));
  };
  bool isolated = true;
  for (std::size_t u = 0; u < n; ++u) isolated = isolated && !a[s][u];
  if (isolated) return 0.0;
  go(group[s], 1);
  if (end_mass.empty()) return 0.0;
  return static_cast<double>(exp_entropy(end_mass) / static_cast<long double>(end_mass.size()));
}

struct Moments {
  long double mean = 0, std = 0, skew = 0;
};

inline Moments moments(const std::vector<double>& x) {
  Moments m;
  const long double n = static_cast<long double>(x.size());
  for (double v : x) m.mean += v;
  m.mean /= n;
  long double m2 = 0, m3 = 0;
  for (double v : x) {
    long double d = v - m.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m.std = std::sqrt(m2);
  m.skew = m.std > 0 ? m3 / (m.std * m.std * m.std) : 0;
  return m;
}

// Pearson correlation over the list of (deg u, deg v) for both orientations
// of every edge.
inline double pearson_assortativity(const AdjMatrix& a) {
  const std::size_t n = a.size();
  std::vector<long double> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) deg[i] += a[i][j] ? 1 : 0;
  std::vector<std::pair<long double, long double>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j]) pairs.emplace_back(deg[i], deg[j]);
  long double mx = 0, my = 0;
  for (auto [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= pairs.size();
  my /= pairs.size();
  long double sxy = 0, sxx = 0, syy = 0;
  for (auto [x, y] : pairs) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

// Cyclic Jacobi rotations; returns eigenvalues (descending) and the matching
// unit eigenvectors as columns.
inline std::pair<Eigen::VectorXd, Eigen::MatrixXd> jacobi_eigen(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) > a(y, y); });
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values(i) = a(order[i], order[i]);
    vectors.col(i) = v.col(order[i]);
  }
  return {values, vectors};
}

// Root of a continuous f on [lo, hi] with a sign change.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Top-m edges of a complete weighted graph by a full sort (weight
// descending, then (i, j) ascending).
inline std::set<std::pair<std::uint32_t, std::uint32_t>> top_edges(
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& edges, std::size_t m) {
  auto sorted = edges;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    if (std::get<2>(x) != std::get<2>(y)) return std::get<2>(x) > std::get<2>(y);
    return std::make_pair(std::get<0>(x), std::get<1>(x)) < std::make_pair(std::get<0>(y), std::get<1>(y));
  });
  std::set<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t i = 0; i < m && i < sorted.size(); ++i)
    out.emplace(std::get<0>(sorted[i]), std::get<1>(sorted[i]));
  return out;
}

}  // namespace oracle

#endif  // MESONET_TESTS_ORACLES_HPP
