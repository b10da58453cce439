#pragma once

// Test-side reference computations. Each one goes the long way round and shares
// no code path with the library routine it is compared against.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cayley/group.hpp"

namespace oracle {

using Complex = std::complex<double>;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline double pi() { return std::acos(-1.0); }

/// Signed-permutation matrix from the payload: column j is ε_{σ(j)} e_{σ(j)}.
inline RMatrix signed_perm_matrix(const cayley::SignedPermutation& sp) {
  const auto d = static_cast<Eigen::Index>(sp.images.size());
  RMatrix m = RMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const int t = sp.images[static_cast<std::size_t>(j)];
    m(t, j) = sp.signs[static_cast<std::size_t>(t)];
  }
  return m;
}

inline RMatrix signed_perm_matrix(const cayley::FiniteGroup& g, std::size_t index) {
  return signed_perm_matrix(std::get<cayley::SignedPermutation>(g.payload(index)));
}

/// max over every group element of ⟨v, ρ(g) b⟩.
inline double scan_sup(const cayley::FiniteGroup& g, const RVector& v, const RVector& b) {
  double best = -1e300;
  for (std::size_t i = 0; i < g.order(); ++i) best = std::max(best, v.dot(signed_perm_matrix(g, i) * b));
  return best;
}

/// ‖x‖_∞ / ‖x‖_{L²} for x(g) = ⟨v, ρ(g) b⟩ evaluated on every element.
inline double scan_ratio(const cayley::FiniteGroup& g, const RVector& v, const RVector& b) {
  double top = 0.0, energy = 0.0;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const double x = v.dot(signed_perm_matrix(g, i) * b);
    top = std::max(top, std::abs(x));
    energy += x * x;
  }
  return top / std::sqrt(energy / static_cast<double>(g.order()));
}

struct MinRatio {
  double value = 1e300;
  RVector v;
};

/// Smallest scan_ratio over `samples` Gaussian directions.
inline MinRatio random_min_ratio_with_argmin(const cayley::FiniteGroup& g, const RVector& b, int samples,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto d = b.size();
  // precompute the orbit once
  RMatrix orbit(d, static_cast<Eigen::Index>(g.order()));
  for (std::size_t i = 0; i < g.order(); ++i) orbit.col(static_cast<Eigen::Index>(i)) = signed_perm_matrix(g, i) * b;
  MinRatio best;
  RVector v(d);
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index j = 0; j < d; ++j) v(j) = normal(rng);
    const Eigen::RowVectorXd x = v.transpose() * orbit;
    const double ratio = x.cwiseAbs().maxCoeff() / std::sqrt(x.squaredNorm() / static_cast<double>(g.order()));
    if (ratio < best.value) best = {ratio, v.normalized()};
  }
  return best;
}

inline double random_min_ratio(const cayley::FiniteGroup& g, const RVector& b, int samples, std::uint64_t seed) {
  return random_min_ratio_with_argmin(g, b, samples, seed).value;
}

/// Random search followed by compass search on the sphere from the best sample.
inline double polished_min_ratio(const cayley::FiniteGroup& g, const RVector& b, int samples, std::uint64_t seed) {
  MinRatio best = random_min_ratio_with_argmin(g, b, samples, seed);
  const auto d = b.size();
  for (double step = 0.1; step > 1e-10; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (Eigen::Index j = 0; j < d; ++j)
        for (double sign : {1.0, -1.0}) {
          RVector w = best.v;
          w(j) += sign * step;
          w.normalize();
          const double r = scan_ratio(g, w, b);
          if (r < best.value - 1e-15) {
            best = {r, w};
            moved = true;
          }
        }
    }
  }
  return best.value;
}

/// Undirected edge list {x, g_i x}, i = 1..k, one entry per generator and vertex.
inline std::vector<std::pair<std::size_t, std::size_t>> cayley_edges(const cayley::FiniteGroup& g,
                                                                       const std::vector<std::size_t>& gens) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t s : gens) edges.emplace_back(x, g.multiply(s, x));
  return edges;
}

/// Counts each listed edge once. {x, g x} and {g x, x} arising from g and g⁻¹ are
/// separate edges of the multigraph, so nothing is merged.
inline std::int64_t crossing_edges(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                   const std::vector<char>& in) {
  std::int64_t count = 0;
  for (const auto& [a, b] : edges) count += (in[a] != in[b]) ? 1 : 0;
  return count;
}

/// All pairwise distances, sorted.
inline std::vector<double> distance_multiset(const RMatrix& points) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) out.push_back((points.row(i) - points.row(j)).norm());
  std::sort(out.begin(), out.end());
  return out;
}

/// Vertices of a regular n-gon of radius r.
inline RMatrix regular_polygon(int n, double r) {
  RMatrix p(n, 2);
  for (int i = 0; i < n; ++i) {
    p(i, 0) = r * std::cos(2 * pi() * i / n);
    p(i, 1) = r * std::sin(2 * pi() * i / n);
  }
  return p;
}

/// Group axioms by exhaustive scan: identity at 0, associativity, inverses.
inline bool group_axioms_hold(const cayley::FiniteGroup& g) {
  const std::size_t n = g.order();
  for (std::size_t a = 0; a < n; ++a) {
    if (g.multiply(0, a) != a || g.multiply(a, 0) != a) return false;
    if (g.multiply(a, g.inverse(a)) != 0) return false;
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c))) return false;
  }
  return true;
}

/// Number of conjugacy classes by direct orbit computation.
inline std::size_t class_count(const cayley::FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<char> seen(n, 0);
  std::size_t classes = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (seen[a]) continue;
    ++classes;
    for (std::size_t h = 0; h < n; ++h) seen[g.multiply(g.multiply(h, a), g.inverse(h))] = 1;
  }
  return classes;
}

/// Plain DFT on Z_n with the averaging convention: F(j) = (1/n) Σ_x f(x) e^{2πi jx/n}.
inline std::vector<Complex> cyclic_dft(const std::vector<Complex>& f) {
  const std::size_t n = f.size();
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc = 0.0;
    for (std::size_t x = 0; x < n; ++x) acc += f[x] * std::polar(1.0, 2 * pi() * double(j * x % n) / double(n));
    out[j] = acc / double(n);
  }
  return out;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace oracle
