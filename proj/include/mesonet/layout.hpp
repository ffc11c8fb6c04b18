#ifndef MESONET_LAYOUT_HPP
#define MESONET_LAYOUT_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mesonet/network.hpp"

namespace mesonet {

struct LayoutConfig {
  double f_a = 0.0002;  // attraction f_a * d^2 along edges
  double f_r = 1.25;    // repulsion f_r / d^2 between every pair
  double f_g = 0.001;   // gravity f_g * d toward the centroid
  unsigned iterations = 1000;
  std::uint64_t seed = 0;
  double cooling = 0.995;  // temperature multiplier per step
  double initial_temperature = 1.0;
  double epsilon = 1e-9;  // distance floor
  unsigned jobs = 1;      // force accumulation threads; does not change results
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct Embedding {
  std::vector<Point> coords;
};

// Uniform in the unit square, drawn from mt19937_64(seed).
std::vector<Point> initial_positions(std::size_t n, std::uint64_t seed);

// Throws std::invalid_argument for negative coefficients, zero iterations or
// an empty network.
Embedding fr_layout(const MesoNetwork& net, const LayoutConfig& config = {});

// Same simulation from explicit starting positions. When `energy` is given it
// receives, per step, the sum of applied displacement magnitudes.
Embedding fr_layout(const MesoNetwork& net, const LayoutConfig& config,
                    std::vector<Point> start, std::vector<double>* energy = nullptr);

// Colors run blue -> green with node_order[i], the narrative position of node
// i (identity when empty). Throws Error when the embedding or order does not
// cover every node.
std::string render_svg(const MesoNetwork& net, const Embedding& embedding,
                       std::span<const std::size_t> node_order = {});

// Gradient endpoints and interpolation, as "#rrggbb".
std::string narrative_color(std::size_t position, std::size_t count);

// `node,x,y` CSV.
void write_coordinates(std::ostream& out, const Embedding& embedding);

}  // namespace mesonet

#endif  // MESONET_LAYOUT_HPP
