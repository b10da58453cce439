#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cayley/fourier.hpp"
#include "cayley/linalg.hpp"

namespace cayley {

/// A(g, h) = m(g h⁻¹) where m is the (integer-valued) generator multiplicity function.
RMatrix cayley_adjacency(const GroupFunction& h);

struct Drawing {
  RMatrix coordinates;  // n × 2
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // g < h, one entry per adjacent pair
  RVector laplacian_spectrum;  // ascending
  double variance_x = 0.0;
  double variance_y = 0.0;
  double covariance = 0.0;
};

/// Vertex v at (x(v), y(v)) from the eigenvectors of the second and third
/// Laplacian eigenvalues, scaled so each axis has mean 0 and variance 1 and
/// the axes are uncorrelated. Each axis is signed so its largest-magnitude
/// coordinate is positive. DisconnectedGraphError if the graph is disconnected.
Drawing spectral_drawing(const RMatrix& adjacency);

/// SVG with circles for vertices and lines for edges. The header comment carries
/// `header` plus the canvas transform (scale, offset) used to place coordinates.
std::string drawing_svg(const Drawing& drawing, nlohmann::json header, double canvas = 800.0);

}  // namespace cayley
