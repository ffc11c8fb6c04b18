#include "mesonet/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "mesonet/error.hpp"
#include "mesonet/io.hpp"

namespace mesonet {
namespace {

constexpr int kStart[3] = {33, 102, 172};  // blue
constexpr int kEnd[3] = {26, 152, 80};     // green

// Unit vector used when two nodes coincide: depends only on the pair, and
// points in opposite directions for the two members.
Point coincident_direction(std::size_t i, std::size_t j) {
  std::size_t lo = std::min(i, j), hi = std::max(i, j);
  double angle = std::fmod(static_cast<double>(lo * 7919 + hi) * 2.399963229728653,
                           2.0 * std::numbers::pi);
  double s = i < j ? 1.0 : -1.0;
  return {s * std::cos(angle), s * std::sin(angle)};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  if (std::string(buf) == "-0.000") return "0.000";
  return buf;
}

}  // namespace

std::vector<Point> initial_positions(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point> out(n);
  for (auto& p : out) {
    p.x = unit();
    p.y = unit();
  }
  return out;
}

Embedding fr_layout(const MesoNetwork& net, const LayoutConfig& config) {
  return fr_layout(net, config, initial_positions(net.node_count, config.seed));
}

Embedding fr_layout(const MesoNetwork& net, const LayoutConfig& config, std::vector<Point> start,
                    std::vector<double>* energy) {
  if (config.f_a < 0 || config.f_r < 0 || config.f_g < 0) {
    throw std::invalid_argument("layout coefficients must be non-negative");
  }
  if (config.iterations == 0) throw std::invalid_argument("layout needs at least one iteration");
  const std::size_t n = net.node_count;
  if (n == 0) throw std::invalid_argument("layout needs at least one node");
  if (start.size() != n) throw std::invalid_argument("start positions do not cover every node");

  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& e : net.edges) {
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }

  std::vector<Point> pos = std::move(start);
  std::vector<Point> next(n);
  std::vector<double> step_length(n);
  std::vector<double> xs(n), ys(n);
  const double eps = config.epsilon;
  double temperature = config.initial_temperature;
  if (energy) energy->clear();

  for (unsigned it = 0; it < config.iterations; ++it) {
    Point centroid;
    for (const auto& p : pos) {
      centroid.x += p.x;
      centroid.y += p.y;
    }
    centroid.x /= static_cast<double>(n);
    centroid.y /= static_cast<double>(n);

    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = pos[i].x;
      ys[i] = pos[i].y;
    }
    auto update = [&](std::size_t i) {
      double fx = 0.0, fy = 0.0;
      const double xi = xs[i], yi = ys[i];
      for (std::size_t j = 0; j < n; ++j) {
        double dx = xi - xs[j];
        double dy = yi - ys[j];
        double r2 = dx * dx + dy * dy;
        if (r2 > 0) {
          // Unit vector times f_r / d^2 with d floored at epsilon.
          double dist = std::sqrt(r2);
          double d = std::max(dist, eps);
          double s = config.f_r / (d * d * dist);
          fx += dx * s;
          fy += dy * s;
        } else if (j != i) {
          Point u = coincident_direction(i, j);
          double push = config.f_r / (eps * eps);
          fx += u.x * push;
          fy += u.y * push;
        }
      }
      for (auto j : adj[i]) {
        double dx = pos[i].x - pos[j].x;
        double dy = pos[i].y - pos[j].y;
        double d = std::sqrt(dx * dx + dy * dy);
        // f_a * d^2 toward j, i.e. f_a * d * (delta vector).
        fx -= config.f_a * d * dx;
        fy -= config.f_a * d * dy;
      }
      fx -= config.f_g * (pos[i].x - centroid.x);
      fy -= config.f_g * (pos[i].y - centroid.y);

      double len = std::hypot(fx, fy);
      double applied = std::min(len, temperature);
      if (len > 0) {
        next[i] = {pos[i].x + fx / len * applied, pos[i].y + fy / len * applied};
      } else {
        next[i] = pos[i];
      }
      step_length[i] = applied;
    };

    unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(n)));
    if (jobs == 1) {
      for (std::size_t i = 0; i < n; ++i) update(i);
    } else {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < jobs; ++t) {
        workers.emplace_back([&, t] {
          for (std::size_t i = t; i < n; i += jobs) update(i);
        });
      }
    }
    std::swap(pos, next);
    if (energy) {
      double total = 0.0;
      for (double s : step_length) total += s;
      energy->push_back(total);
    }
    temperature *= config.cooling;
  }
  return Embedding{std::move(pos)};
}

std::string narrative_color(std::size_t position, std::size_t count) {
  double t = count > 1 ? static_cast<double>(position) / static_cast<double>(count - 1) : 0.0;
  char buf[8];
  int c[3];
  for (int k = 0; k < 3; ++k) {
    c[k] = static_cast<int>(std::lround(kStart[k] + t * (kEnd[k] - kStart[k])));
  }
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

std::string render_svg(const MesoNetwork& net, const Embedding& embedding,
                       std::span<const std::size_t> node_order) {
  const std::size_t n = net.node_count;
  if (embedding.coords.size() != n) {
    throw Error("embedding has " + std::to_string(embedding.coords.size()) +
                " coordinates for " + std::to_string(n) + " nodes");
  }
  if (!node_order.empty() && node_order.size() != n) {
    throw Error("node order does not cover every node");
  }
  for (const auto& p : embedding.coords) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error("embedding has a non-finite coordinate");
  }

  constexpr double kSize = 800.0;
  constexpr double kMargin = 0.05 * kSize;
  constexpr double kLegend = 60.0;
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  if (n > 0) {
    min_x = max_x = embedding.coords[0].x;
    min_y = max_y = embedding.coords[0].y;
    for (const auto& p : embedding.coords) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  double span = std::max(max_x - min_x, max_y - min_y);
  double scale = span > 0 ? (kSize - 2 * kMargin) / span : 1.0;
  double off_x = kMargin + ((kSize - 2 * kMargin) - (max_x - min_x) * scale) / 2;
  double off_y = kMargin + ((kSize - 2 * kMargin) - (max_y - min_y) * scale) / 2;
  auto sx = [&](double x) { return fmt(off_x + (x - min_x) * scale); };
  auto sy = [&](double y) { return fmt(off_y + (y - min_y) * scale); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(kSize) +
         "\" height=\"" + fmt(kSize + kLegend) + "\" viewBox=\"0 0 " + fmt(kSize) + " " +
         fmt(kSize + kLegend) + "\">\n";
  svg += "<defs><linearGradient id=\"order\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">";
  svg += "<stop offset=\"0\" stop-color=\"" + narrative_color(0, 2) + "\"/>";
  svg += "<stop offset=\"1\" stop-color=\"" + narrative_color(1, 2) + "\"/>";
  svg += "</linearGradient></defs>\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<g stroke=\"#b0b0b0\" stroke-width=\"0.4\" stroke-opacity=\"0.6\">\n";
  for (const auto& e : net.edges) {
    const auto& a = embedding.coords[e.source];
    const auto& b = embedding.coords[e.target];
    svg += "<line x1=\"" + sx(a.x) + "\" y1=\"" + sy(a.y) + "\" x2=\"" + sx(b.x) + "\" y2=\"" +
           sy(b.y) + "\"/>\n";
  }
  svg += "</g>\n<g stroke=\"none\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t order = node_order.empty() ? i : node_order[i];
    const auto& p = embedding.coords[i];
    svg += "<circle cx=\"" + sx(p.x) + "\" cy=\"" + sy(p.y) + "\" r=\"3\" fill=\"" +
           narrative_color(order, n) + "\"/>\n";
  }
  svg += "</g>\n";
  double ly = kSize + 15;
  svg += "<rect x=\"" + fmt(kMargin + 20) + "\" y=\"" + fmt(ly) + "\" width=\"" +
         fmt(kSize - 2 * kMargin - 40) + "\" height=\"12\" fill=\"url(#order)\"/>\n";
  svg += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(ly + 11) +
         "\" font-family=\"sans-serif\" font-size=\"12\">1</text>\n";
  svg += "<text x=\"" + fmt(kSize - kMargin - 12) + "\" y=\"" + fmt(ly + 11) +
         "\" font-family=\"sans-serif\" font-size=\"12\">N</text>\n";
  svg += "</svg>\n";
  return svg;
}

void write_coordinates(std::ostream& out, const Embedding& embedding) {
  out << "node,x,y\n";
  for (std::size_t i = 0; i < embedding.coords.size(); ++i) {
    out << i << ',' << io::format_double(embedding.coords[i].x) << ','
        << io::format_double(embedding.coords[i].y) << '\n';
  }
}

}  // namespace mesonet
