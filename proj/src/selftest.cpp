#include "cayley/selftest.hpp"

#include <algorithm>
#include <cmath>

#include "cayley/bounded_basis.hpp"
#include "cayley/errors.hpp"
#include "cayley/expansion.hpp"
#include "cayley/fourier.hpp"
#include "cayley/spectral.hpp"

namespace cayley {

namespace {

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const Complex& z : v) m = std::max(m, std::abs(z));
  return m;
}

double relative(double error, double scale) { return error / std::max(scale, 1e-300); }

class Accumulator {
 public:
  Accumulator(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }
  void error(double e) { result_.worst = std::max(result_.worst, e); }
  CheckResult finish() const { return result_; }
  CheckResult skip(std::string note) const {
    CheckResult r = result_;
    r.skipped = true;
    r.note = std::move(note);
    return r;
  }

 private:
  CheckResult result_;
};

class SlackAccumulator {
 public:
  SlackAccumulator(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
    result_.worst = kInfinity;
    result_.slack = true;
  }
  void slack(double s) { result_.worst = std::min(result_.worst, s); }
  CheckResult finish() const { return result_; }

 private:
  CheckResult result_;
};

}  // namespace

bool CheckResult::passed() const {
  if (skipped) return true;
  if (slack) return worst >= -tolerance;
  return worst <= tolerance;
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    nlohmann::json j = {{"name", c.name}, {"tolerance", c.tolerance}, {"passed", c.passed()}, {"skipped", c.skipped}};
    j["worst"] = std::isfinite(c.worst) ? nlohmann::json(c.worst) : nlohmann::json(nullptr);
    if (!c.note.empty()) j["note"] = c.note;
    list.push_back(std::move(j));
  }
  return {{"group", group}, {"passed", passed()}, {"checks", list}};
}

SuiteReport identity_suite(const GroupPtr& group, const SeedTree& seeds, const SuiteOptions& options) {
  SuiteReport report;
  report.group = group->descriptor();
  const std::size_t n = group->order();
  const double tol = options.relative_tolerance;

  IrrepTablePtr table;
  std::string table_note;
  try {
    table = shared_irreps(group);
    if (!table->complete) table_note = "irrep table is partial";
  } catch (const SizeLimitError& e) {
    table_note = e.what();
  }
  const bool complete = table && table->complete;

  Accumulator dims("sum_dim_squared", 0.0);
  if (complete) {
    std::size_t sum = 0;
    for (const Irrep& rho : table->irreps) sum += rho.dimension() * rho.dimension();
    dims.error(std::abs(static_cast<double>(sum) - static_cast<double>(n)));
    report.checks.push_back(dims.finish());
  } else {
    report.checks.push_back(dims.skip(table_note));
  }

  Accumulator parseval("parseval", tol), inversion("inversion", tol), convolution("convolution_theorem", tol);
  Accumulator schatten("schatten_fourier_vs_dense", 1e-8), spectrum("spectrum_fourier_vs_dense", 1e-8);
  SlackAccumulator hy("hausdorff_young_slack", options.slack_tolerance);
  SlackAccumulator qform("qform_schatten_slack", options.slack_tolerance);
  Accumulator gram("basis_gram_residual", 1e-9), eigen("basis_eigen_residual", 1e-8);
  Accumulator span("basis_span_difference", 1e-8);
  const bool dense = options.spectral_checks && n <= options.dense_limit;

  for (int i = 0; i < options.functions; ++i) {
    Rng rng = seeds.child("function", static_cast<std::uint64_t>(i)).engine();
    const GroupFunction f1 = random_function(group, rng, false, false);
    const GroupFunction f2 = random_function(group, rng, false, false);
    const GroupFunction fs = random_function(group, rng, true, true);
    const GroupFunction x = random_function(group, rng, false, false);

    if (complete) {
      const FourierCoefficients c1 = fourier_transform(f1, table);
      double energy = 0.0;
      for (std::size_t r = 0; r < c1.size(); ++r)
        energy += static_cast<double>((*table)[r].dimension()) * c1[r].squaredNorm();
      const double l2 = lp_norm(f1, 2.0);
      parseval.error(relative(std::abs(energy - l2 * l2), l2 * l2));

      const GroupFunction back = inverse_fourier(c1);
      double diff = 0.0;
      for (std::size_t g = 0; g < n; ++g) diff = std::max(diff, std::abs(back[g] - f1[g]));
      inversion.error(relative(diff, max_abs(f1.values())));

      const FourierCoefficients c2 = fourier_transform(f2, table);
      const FourierCoefficients c12 = fourier_transform(convolve(f1, f2), table);
      double worst = 0.0, scale = 0.0;
      for (std::size_t r = 0; r < c1.size(); ++r) {
        const CMatrix product = c1[r] * c2[r];
        worst = std::max(worst, (c12[r] - product).cwiseAbs().maxCoeff());
        scale = std::max(scale, product.cwiseAbs().maxCoeff());
      }
      convolution.error(relative(worst, std::max(scale, max_abs(f1.values()) * max_abs(f2.values()) / n)));
    }

    for (double p : {1.0, 1.5, 2.0}) hy.slack(hausdorff_young_check(f1, p).slack);
    for (double p : {1.0, 2.0, 4.0, 8.0, kInfinity}) qform.slack(qform_schatten_check(fs, x, p).slack);

    if (complete && dense) {
      const FourierCoefficients cs = fourier_transform(fs, table);
      for (double p : {1.0, 2.0, 3.0, kInfinity}) {
        const double a = schatten_norm_fourier(cs, p);
        schatten.error(relative(std::abs(a - schatten_norm_dense(fs, p)), a));
      }
    }
    if (dense && i < 5) {
      const ConvolutionOperator op = build_operator(fs);
      const SpectralData sd = symmetric_eigendecomposition(op);
      const double scale = std::max(1e-300, sd.eigenvalues.cwiseAbs().maxCoeff());
      if (complete) {
        RVector via = expand_spectrum(spectrum_via_fourier(fs));
        std::sort(via.data(), via.data() + via.size(), std::greater<>());
        spectrum.error(relative((via - sd.eigenvalues).cwiseAbs().maxCoeff(), scale));
      }
      const SeedTree basis_seeds = seeds.child("basis", static_cast<std::uint64_t>(i));
      const BoundedBasisReport numeric = bounded_eigenbasis_numeric(op, sd, basis_seeds);
      gram.error(numeric.gram_residual);
      eigen.error(numeric.max_eigen_residual);
      if (complete) {
        const BoundedBasisReport rep = bounded_eigenbasis_representation(fs, table, basis_seeds);
        gram.error(rep.gram_residual);
        eigen.error(rep.max_eigen_residual);
        span.error(span_difference(rep, numeric));
      }
    }
  }

  for (Accumulator* a : {&parseval, &inversion, &convolution})
    report.checks.push_back(complete ? a->finish() : a->skip(table_note));
  report.checks.push_back(hy.finish());
  report.checks.push_back(qform.finish());
  const std::string dense_note = options.spectral_checks ? "group order exceeds the dense limit" : "disabled";
  for (Accumulator* a : {&schatten, &spectrum, &span}) {
    if (!dense) report.checks.push_back(a->skip(dense_note));
    else report.checks.push_back(complete ? a->finish() : a->skip(table_note));
  }
  for (Accumulator* a : {&gram, &eigen}) report.checks.push_back(dense ? a->finish() : a->skip(dense_note));
  return report;
}

}  // namespace cayley
