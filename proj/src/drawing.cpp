#include "cayley/drawing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cayley/errors.hpp"

namespace cayley {

RMatrix cayley_adjacency(const GroupFunction& h) {
  const FiniteGroup& G = h.group_ref();
  const auto n = static_cast<Eigen::Index>(G.order());
  RMatrix a(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    const std::size_t yinv = G.inverse(static_cast<std::size_t>(y));
    for (Eigen::Index x = 0; x < n; ++x) a(x, y) = h[G.multiply(static_cast<std::size_t>(x), yinv)].real();
  }
  return a;
}

Drawing spectral_drawing(const RMatrix& adjacency) {
  const Eigen::Index n = adjacency.rows();
  if (adjacency.cols() != n) throw StructuralError("spectral_drawing: adjacency must be square");
  if (n < 3) throw DomainError("spectral_drawing: need at least three vertices");
  if ((adjacency - adjacency.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw NotHermitianError("spectral_drawing: adjacency is not symmetric");
  }
  const RVector degree = adjacency.rowwise().sum();
  RMatrix laplacian = -adjacency;
  laplacian.diagonal() += degree;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(laplacian);

  Drawing out;
  out.laplacian_spectrum = es.eigenvalues();
  const double scale = std::max(1.0, degree.cwiseAbs().maxCoeff());
  if (!(out.laplacian_spectrum(1) > 1e-9 * scale)) {
    throw DisconnectedGraphError("spectral_drawing: graph is disconnected (second Laplacian eigenvalue " +
                                 std::to_string(out.laplacian_spectrum(1)) + ")");
  }
  // re-center and re-orthonormalize so isotropy holds to rounding
  RMatrix xy = es.eigenvectors().middleCols(1, 2);
  xy.rowwise() -= xy.colwise().mean();
  Eigen::HouseholderQR<RMatrix> qr(xy);
  RMatrix q = qr.householderQ() * RMatrix::Identity(n, 2);
  q *= std::sqrt(static_cast<double>(n));
  for (Eigen::Index c = 0; c < 2; ++c) {
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (std::abs(q(i, c)) > std::abs(q(arg, c)) + 1e-12) arg = i;
    if (q(arg, c) < 0.0) q.col(c) = -q.col(c);
  }
  out.coordinates = q;
  const double inv_n = 1.0 / static_cast<double>(n);
  out.variance_x = q.col(0).squaredNorm() * inv_n;
  out.variance_y = q.col(1).squaredNorm() * inv_n;
  out.covariance = q.col(0).dot(q.col(1)) * inv_n;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (adjacency(i, j) != 0.0) out.edges.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return out;
}

std::string drawing_svg(const Drawing& drawing, nlohmann::json header, double canvas) {
  const RMatrix& c = drawing.coordinates;
  const double extent = c.size() ? std::max(c.cwiseAbs().maxCoeff(), 1e-12) : 1.0;
  const double margin = 20.0;
  const double scale = (canvas / 2.0 - margin) / extent;
  const double offset = canvas / 2.0;
  header["canvas"] = {{"size", canvas}, {"scale", scale}, {"offset", offset}, {"y_axis", "down"}};

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                canvas, canvas, canvas, canvas);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<!-- " + header.dump() + " -->\n";
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g stroke=\"#8899aa\" stroke-width=\"0.6\" "
         "stroke-opacity=\"0.6\">\n";
  auto px = [&](Eigen::Index i) { return offset + scale * c(i, 0); };
  auto py = [&](Eigen::Index i) { return offset - scale * c(i, 1); };
  for (const auto& [a, b] : drawing.edges) {
    const auto ia = static_cast<Eigen::Index>(a);
    const auto ib = static_cast<Eigen::Index>(b);
    std::snprintf(buf, sizeof buf, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"/>\n", px(ia), py(ia), px(ib),
                  py(ib));
    out += buf;
  }
  out += "</g>\n<g fill=\"#1f3b73\">\n";
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\"/>\n", px(i), py(i));
    out += buf;
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace cayley
