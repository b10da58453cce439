#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cayley/group.hpp"
#include "cayley/random.hpp"

namespace cayley {

struct CheckResult {
  std::string name;
  double worst = 0.0;      // largest observed error (or smallest slack, for slack checks)
  double tolerance = 0.0;
  bool slack = false;      // pass when worst >= -tolerance instead of worst <= tolerance
  bool skipped = false;
  std::string note;

  bool passed() const;
};

struct SuiteOptions {
  int functions = 100;
  double relative_tolerance = 1e-9;
  double slack_tolerance = 1e-10;
  bool spectral_checks = true;    // dense eigen and bounded-basis checks
  std::size_t dense_limit = 1000; // skip dense checks above this order
};

struct SuiteReport {
  std::string group;
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Fourier identities (Parseval, inversion, convolution, Σ d² = |G|), Schatten
/// consistency and norm inequalities, plus bounded-basis residuals, over random
/// functions drawn from seeds.child("function", i).
SuiteReport identity_suite(const GroupPtr& group, const SeedTree& seeds, const SuiteOptions& options = {});

}  // namespace cayley
