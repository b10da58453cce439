#include "cayley/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "cayley/bounded_basis.hpp"
#include "cayley/drawing.hpp"
#include "cayley/errors.hpp"
#include "cayley/expansion.hpp"
#include "cayley/lowerbound.hpp"
#include "cayley/selftest.hpp"
#include "cayley/spectral.hpp"

namespace cayley {

namespace {

using nlohmann::json;

/// Raised for bad flag values discovered after parsing; maps to exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Outcome {
  json report;
  bool verdict = true;
};

struct Common {
  std::string group = "cyclic:12";
  std::uint64_t seed = 0;
  std::string out;
};

struct FunctionSource {
  std::vector<std::size_t> generators;
  int k = 0;
};

void add_common(CLI::App* app, Common& c, bool with_group = true) {
  if (with_group) app->add_option("--group", c.group, "Group descriptor, e.g. cyclic:20, dihedral:5, q8, symmetric:4, hyperoctahedral:3")->capture_default_str();
  app->add_option("--seed", c.seed, "Master seed (64-bit)")->capture_default_str();
  app->add_option("--out", c.out, "Write the JSON report here instead of stdout");
}

void add_source(CLI::App* app, FunctionSource& s) {
  auto* gens = app->add_option("--generators", s.generators,
                               "Cayley graph from these generator indices (comma separated); inverses are added")
                   ->delimiter(',');
  app->add_option("--k", s.k, "Cayley multigraph with k uniform random generators")
      ->check(CLI::Range(1, 100000))
      ->excludes(gens);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw UsageError("failed writing '" + path + "'");
}

json envelope(const std::string& command, const Common& c, const GroupPtr& group) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["seed"] = c.seed;
  if (group) j["group"] = group->to_json();
  return j;
}

GroupPtr load_group(const std::string& descriptor) {
  try {
    return parse_group(descriptor);
  } catch (const Error& e) {
    throw UsageError(std::string("--group: ") + e.what());
  }
}

std::optional<RandomCayleyMultigraph> resolve_graph(const GroupPtr& group, const FunctionSource& s,
                                                    const SeedTree& seeds) {
  if (!s.generators.empty()) {
    for (std::size_t g : s.generators) {
      if (g >= group->order()) {
        throw UsageError("--generators: index " + std::to_string(g) + " is outside a group of order " +
                         std::to_string(group->order()));
      }
    }
    return multigraph_from_generators(group, s.generators);
  }
  if (s.k > 0) {
    Rng rng = seeds.child("graph").engine();
    return sample_multigraph(group, s.k, rng);
  }
  return std::nullopt;
}

/// The multigraph's multiplicity function, or a random real symmetric function.
GroupFunction resolve_function(const GroupPtr& group, const std::optional<RandomCayleyMultigraph>& graph,
                               const SeedTree& seeds, json& description) {
  if (graph) {
    description = graph->to_json();
    description["kind"] = "cayley_multigraph";
    std::vector<double> m(graph->multiplicity.begin(), graph->multiplicity.end());
    return GroupFunction::from_real(group, m, true);
  }
  Rng rng = seeds.child("function").engine();
  description = {{"kind", "random_symmetric"}, {"distribution", "uniform[-1,1]"}};
  return random_function(group, rng, true, true);
}

template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex lock;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> guard(lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------- spectrum

struct SpectrumConfig {
  Common common;
  FunctionSource source;
  double tau = -1.0;
  bool with_vectors = false;
  std::string csv;
};

Outcome run_spectrum(const SpectrumConfig& cfg) {
  const GroupPtr group = load_group(cfg.common.group);
  const SeedTree seeds(cfg.common.seed);
  json source;
  const GroupFunction f = resolve_function(group, resolve_graph(group, cfg.source, seeds), seeds, source);

  SpectralOptions opts;
  opts.tolerance = cfg.tau;
  opts.with_vectors = cfg.with_vectors;
  const SpectralData sd = symmetric_eigendecomposition(build_operator(f), opts);

  Outcome out;
  out.report = envelope("spectrum", cfg.common, group);
  out.report["source"] = source;
  out.report["spectrum"] = sd.to_json(cfg.with_vectors);

  const IrrepTablePtr table = shared_irreps(group);
  if (table->complete) {
    const std::vector<SpectrumEntry> entries = spectrum_via_fourier(f);
    json list = json::array();
    for (const SpectrumEntry& e : entries)
      list.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}, {"irrep_id", e.irrep_id}});
    RVector via = expand_spectrum(entries);
    std::sort(via.data(), via.data() + via.size(), std::greater<>());
    const double scale = std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
    const double gap = (via - sd.eigenvalues).cwiseAbs().maxCoeff() / scale;
    out.report["fourier"] = {{"entries", list}, {"max_difference", gap}};
    out.verdict = gap <= 1e-8;
  } else {
    out.report["fourier"] = nullptr;
  }
  if (!cfg.csv.empty()) write_text(cfg.csv, sd.to_csv());
  return out;
}

// ---------------------------------------------------------------- basis

struct BasisConfig {
  Common common;
  FunctionSource source;
  std::string path = "all";
  double tau = -1.0;
  int max_retries = 64;
  std::string csv;
};

std::string basis_csv(const BoundedBasisReport& r) {
  std::string text;
  const CMatrix b = r.basis();
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (j) text += ',';
      text += format_double(b(i, j).real());
      if (!r.real) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%+.17gi", b(i, j).imag());
        text += buf;
      }
    }
    text += '\n';
  }
  return text;
}

Outcome run_basis(const BasisConfig& cfg) {
  const GroupPtr group = load_group(cfg.common.group);
  const SeedTree seeds(cfg.common.seed);
  json source;
  const GroupFunction f = resolve_function(group, resolve_graph(group, cfg.source, seeds), seeds, source);

  BasisOptions opts;
  opts.max_retries = cfg.max_retries;
  opts.cluster_tolerance = cfg.tau;

  std::vector<std::pair<std::string, BoundedBasisReport>> reports;
  const bool all = cfg.path == "all";
  if (all || cfg.path == "numeric") {
    reports.emplace_back("numeric", bounded_eigenbasis_numeric(build_operator(f), seeds.child("numeric"), opts));
  }
  if (all || cfg.path == "representation" || cfg.path == "unitary") {
    const IrrepTablePtr table = shared_irreps(group);
    if (!table->complete) {
      if (!all) throw UsageError("--path " + cfg.path + " needs a complete irrep table for " + group->descriptor());
    } else {
      if (all || cfg.path == "representation") {
        reports.emplace_back("representation", bounded_eigenbasis_representation(f, table, seeds.child("representation"),
                                                                                 BasisMode::real, opts));
      }
      if (all || cfg.path == "unitary") {
        reports.emplace_back("unitary", bounded_eigenbasis_representation(f, table, seeds.child("representation"),
                                                                          BasisMode::unitary, opts));
      }
    }
  }

  Outcome out;
  out.report = envelope("basis", cfg.common, group);
  out.report["source"] = source;
  const double bound = 3.0 * std::sqrt(std::log(static_cast<double>(group->order())));
  json paths = json::object();
  for (const auto& [name, r] : reports) {
    json j = r.to_json();
    j["gram_ok"] = r.gram_residual <= 1e-9;
    j["eigen_ok"] = r.max_eigen_residual <= 1e-8;
    j["within_3_sqrt_log_n"] = r.constant <= bound;
    out.verdict = out.verdict && r.gram_residual <= 1e-9 && r.max_eigen_residual <= 1e-8;
    paths[name] = std::move(j);
  }
  out.report["paths"] = paths;
  out.report["reference_bound"] = bound;
  json spans = json::object();
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const double diff = span_difference(reports[i].second, reports[0].second);
    spans[reports[i].first + "_vs_" + reports[0].first] = std::isfinite(diff) ? json(diff) : json(nullptr);
    out.verdict = out.verdict && diff <= 1e-8;
  }
  out.report["span_differences"] = spans;
  out.report["verdict"] = out.verdict;
  if (!cfg.csv.empty()) write_text(cfg.csv, basis_csv(reports.front().second));
  return out;
}

// ---------------------------------------------------------------- lowerbound / draw

json drawing_json(const Drawing& d) {
  json coords = json::array();
  for (Eigen::Index i = 0; i < d.coordinates.rows(); ++i) coords.push_back({d.coordinates(i, 0), d.coordinates(i, 1)});
  return {{"vertices", d.coordinates.rows()},
          {"edges", d.edges.size()},
          {"variance_x", d.variance_x},
          {"variance_y", d.variance_y},
          {"covariance", d.covariance},
          {"lambda2", d.laplacian_spectrum.size() > 1 ? d.laplacian_spectrum(1) : 0.0},
          {"lambda3", d.laplacian_spectrum.size() > 2 ? d.laplacian_spectrum(2) : 0.0},
          {"coordinates", coords}};
}

bool isotropic(const Drawing& d) {
  return std::abs(d.variance_x - 1.0) <= 1e-8 && std::abs(d.variance_y - 1.0) <= 1e-8 &&
         std::abs(d.covariance) <= 1e-8;
}

struct LowerboundConfig {
  Common common;
  int d = 3;
  std::string predicate = "drawing";
  int max_attempts = 200;
  double sparsify = 2.0 / 3.0;
  std::string svg;
};

Outcome run_lowerbound(const LowerboundConfig& cfg) {
  const GroupPtr group = build_group(Family::hyperoctahedral, cfg.d);
  const SeedTree seeds(cfg.common.seed);
  const RVector a = staircase_vector(cfg.d);
  const GroupFunction f = construction_f(group, a);
  const IrrepTable table = irreps(group);
  const Irrep& rho = table[table.index_of("std")];

  ResampleOptions opts;
  opts.kind = cfg.predicate == "drawing" ? SampleKind::drawing : SampleKind::proposition;
  opts.sparsify = cfg.sparsify;
  opts.max_attempts = cfg.max_attempts;
  const SampleOutcome sample = resample_until_valid(f, rho, a, seeds, opts);
  const WorstRatio ideal = worst_ratio(a);

  Outcome out;
  out.report = envelope("lowerbound", cfg.common, group);
  out.report["d"] = cfg.d;
  out.report["predicate"] = cfg.predicate;
  out.report["max_attempts"] = cfg.max_attempts;
  out.report["sparsify"] = cfg.sparsify;
  out.report["a"] = std::vector<double>(a.data(), a.data() + a.size());
  out.report["ideal_worst_ratio"] = {{"value", ideal.value}, {"argmin_k", ideal.argmin_k}};
  out.report["sample"] = sample.to_json();
  out.report["worst_ratio"] = {{"value", sample.ratio.value}, {"argmin_k", sample.ratio.argmin_k}};
  out.report["relative_to_ideal"] = sample.ratio.value / ideal.value;
  out.verdict = sample.valid;

  if (!cfg.svg.empty()) {
    if (!sample.h) throw Error("no sample to draw");
    const Drawing drawing = spectral_drawing(cayley_adjacency(*sample.h));
    const json header = {{"d", cfg.d}, {"seed", cfg.common.seed}, {"C", cfg.sparsify}, {"attempts", sample.attempts},
                         {"predicate", cfg.predicate}};
    write_text(cfg.svg, drawing_svg(drawing, header));
    json dj = drawing_json(drawing);
    dj.erase("coordinates");
    dj["isotropic"] = isotropic(drawing);
    out.report["drawing"] = dj;
    out.verdict = out.verdict && isotropic(drawing);
  }
  out.report["verdict"] = out.verdict;
  return out;
}

struct DrawConfig {
  Common common;
  FunctionSource source;
  std::string svg;
};

Outcome run_draw(const DrawConfig& cfg) {
  const GroupPtr group = load_group(cfg.common.group);
  const SeedTree seeds(cfg.common.seed);
  FunctionSource source = cfg.source;
  if (source.generators.empty() && source.k == 0) throw UsageError("draw needs --generators or --k");
  const RandomCayleyMultigraph graph = *resolve_graph(group, source, seeds);
  const Drawing drawing = spectral_drawing(graph.adjacency());

  Outcome out;
  out.report = envelope("draw", cfg.common, group);
  out.report["graph"] = graph.to_json();
  out.report["drawing"] = drawing_json(drawing);
  out.report["isotropic"] = isotropic(drawing);
  out.verdict = isotropic(drawing);
  if (!cfg.svg.empty()) {
    const json header = {{"group", group->descriptor()}, {"seed", cfg.common.seed}, {"generators", graph.generators}};
    write_text(cfg.svg, drawing_svg(drawing, header));
  }
  return out;
}

// ---------------------------------------------------------------- expansion

struct ExpansionConfig {
  Common common;
  int k = 10;
  int trials = 50;
  std::string mode = "exhaustive";
  std::uint64_t samples_per_size = 2000;
  double threshold = 10.0;
  bool skip_identity = false;
  bool schatten = false;
  unsigned threads = 0;
};

Outcome run_expansion(const ExpansionConfig& cfg) {
  const GroupPtr group = load_group(cfg.common.group);
  const SeedTree seeds(cfg.common.seed);
  ExpansionOptions opts;
  opts.mode = parse_enumeration_mode(cfg.mode);
  opts.samples_per_size = cfg.samples_per_size;
  opts.check_identity = !cfg.skip_identity;
  if (opts.mode == EnumerationMode::exhaustive && group->order() > kExhaustiveLimit) {
    throw UsageError("--mode exhaustive needs a group of order <= " + std::to_string(kExhaustiveLimit) +
                     "; use --mode sampled");
  }
  if (group->order() < 4) throw UsageError("expansion needs a group of order >= 4");

  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<json> per_trial(trials);
  std::vector<ExpansionReport> reports(trials);
  parallel_for(trials, cfg.threads ? cfg.threads : default_threads(), [&](std::size_t t) {
    Rng rng = seeds.child("trial", t).engine();
    const RandomCayleyMultigraph graph = sample_multigraph(group, cfg.k, rng);
    reports[t] = smallset_expansion_report(graph, opts, rng);
    per_trial[t] = {{"trial", t}, {"graph", graph.to_json()}, {"report", reports[t].to_json()}};
  });

  std::vector<double> constants;
  double residual = 0.0;
  std::uint64_t mismatches = 0;
  int below = 0;
  for (const ExpansionReport& r : reports) {
    constants.push_back(r.constant_estimate);
    residual = std::max(residual, r.max_identity_residual);
    mismatches += r.boundary_mismatches;
    below += r.constant_estimate <= cfg.threshold ? 1 : 0;
  }
  const double width = 0.25;
  const double top = *std::max_element(constants.begin(), constants.end());
  std::vector<int> counts(static_cast<std::size_t>(std::floor(top / width)) + 1, 0);
  for (double c : constants) ++counts[static_cast<std::size_t>(std::floor(c / width))];

  Outcome out;
  out.report = envelope("expansion", cfg.common, group);
  out.report["k"] = cfg.k;
  out.report["mode"] = cfg.mode;
  out.report["trials"] = per_trial;
  out.report["summary"] = {{"constant_estimates", constants},
                           {"histogram", {{"bin_width", width}, {"counts", counts}}},
                           {"threshold", cfg.threshold},
                           {"threshold_note", "fixed calibration value"},
                           {"trials_within_threshold", below},
                           {"max_identity_residual", residual},
                           {"boundary_mismatches", mismatches}};
  const bool identity_ok = residual <= 1e-8 && mismatches == 0;
  const bool half_ok = 2 * below >= cfg.trials;
  out.verdict = identity_ok && half_ok;

  if (cfg.schatten) {
    std::vector<int> p_range;
    for (int p = 2; p <= 8; ++p) p_range.push_back(p);
    const ConcentrationEstimate est =
        schatten_concentration_estimate(group, cfg.k, cfg.trials, p_range, cfg.threshold, seeds.child("schatten"));
    out.report["schatten_concentration"] = est.to_json();
  }
  out.report["verdict"] = {{"identity", identity_ok}, {"half_within_threshold", half_ok}, {"passed", out.verdict}};
  return out;
}

// ---------------------------------------------------------------- selftest

struct SelftestConfig {
  Common common;
  int functions = 20;
};

Outcome run_selftest(const SelftestConfig& cfg) {
  const GroupPtr group = load_group(cfg.common.group);
  SuiteOptions opts;
  opts.functions = cfg.functions;
  const SuiteReport suite = identity_suite(group, SeedTree(cfg.common.seed), opts);
  Outcome out;
  out.report = envelope("selftest", cfg.common, group);
  out.report["suite"] = suite.to_json();
  out.verdict = suite.passed();
  return out;
}

int emit(const Outcome& outcome, const Common& common, std::ostream& out) {
  const std::string text = outcome.report.dump(2) + "\n";
  if (common.out.empty()) {
    out << text;
  } else {
    write_text(common.out, text);
  }
  return outcome.verdict ? kExitOk : kExitVerdict;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral experiments on Cayley graphs of finite groups"};
  app.name("cayley");
  app.require_subcommand(1);

  SpectrumConfig spectrum;
  auto* sp = app.add_subcommand("spectrum", "Eigenvalues of M_f, clustered, with a Fourier cross-check");
  add_common(sp, spectrum.common);
  add_source(sp, spectrum.source);
  sp->add_option("--tau", spectrum.tau, "Cluster gap (default 1e-6 * ||M||_op)");
  sp->add_flag("--with-vectors", spectrum.with_vectors, "Include cluster bases in the JSON");
  sp->add_option("--csv", spectrum.csv, "Write eigenvalue,multiplicity CSV here");

  BasisConfig basis;
  auto* bs = app.add_subcommand("basis", "Bounded orthonormal eigenbases (numeric and representation paths)");
  add_common(bs, basis.common);
  add_source(bs, basis.source);
  bs->add_option("--path", basis.path, "numeric, representation, unitary or all")
      ->check(CLI::IsMember({"numeric", "representation", "unitary", "all"}))
      ->capture_default_str();
  bs->add_option("--tau", basis.tau, "Cluster gap (default 1e-6 * ||M||_op)");
  bs->add_option("--max-retries", basis.max_retries, "Rotation retries per cluster")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  bs->add_option("--csv", basis.csv, "Write the first emitted basis matrix here");

  LowerboundConfig lower;
  auto* lb = app.add_subcommand("lowerbound", "Random Cayley graph on the hyperoctahedral group with a poor eigenbasis");
  add_common(lb, lower.common, false);
  lb->add_option("--d", lower.d, "Dimension of the hyperoctahedral group")->check(CLI::Range(2, 5))->capture_default_str();
  lb->add_option("--predicate", lower.predicate, "drawing or proposition")
      ->check(CLI::IsMember({"drawing", "proposition"}))
      ->capture_default_str();
  lb->add_option("--max-attempts", lower.max_attempts, "Resampling budget")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  lb->add_option("--sparsify", lower.sparsify, "Constant C in the drawing recipe C(1 - f(g))")
      ->check(CLI::Range(1e-9, 1.0))
      ->capture_default_str();
  lb->add_option("--svg", lower.svg, "Write a spectral drawing of the sampled graph here");

  ExpansionConfig expansion;
  auto* ex = app.add_subcommand("expansion", "Small-set expansion of random Cayley multigraphs");
  expansion.common.group = "cyclic:20";
  add_common(ex, expansion.common);
  ex->add_option("--k", expansion.k, "Number of random generators")->check(CLI::Range(1, 100000))->capture_default_str();
  ex->add_option("--trials", expansion.trials, "Independent graphs")->check(CLI::Range(1, 100000))->capture_default_str();
  ex->add_option("--mode", expansion.mode, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}))
      ->capture_default_str();
  ex->add_option("--samples-per-size", expansion.samples_per_size, "Subsets per size in sampled mode")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}))
      ->capture_default_str();
  ex->add_option("--threshold", expansion.threshold, "Calibration threshold for the constant estimate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ex->add_flag("--skip-identity", expansion.skip_identity, "Skip the per-subset quadratic-form identity check");
  ex->add_flag("--schatten", expansion.schatten, "Also report the Schatten concentration statistic");
  ex->add_option("--threads", expansion.threads, "Worker threads (0 = hardware concurrency)")
      ->check(CLI::Range(0u, 1024u));

  DrawConfig draw;
  auto* dr = app.add_subcommand("draw", "Spectral drawing of a Cayley multigraph");
  add_common(dr, draw.common);
  add_source(dr, draw.source);
  dr->add_option("--svg", draw.svg, "Write the drawing as SVG here");

  SelftestConfig selftest;
  auto* st = app.add_subcommand("selftest", "Identity and invariant suite on one group");
  add_common(st, selftest.common);
  st->add_option("--functions", selftest.functions, "Random functions per check")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sp) return emit(run_spectrum(spectrum), spectrum.common, out);
    if (*bs) return emit(run_basis(basis), basis.common, out);
    if (*lb) return emit(run_lowerbound(lower), lower.common, out);
    if (*ex) return emit(run_expansion(expansion), expansion.common, out);
    if (*dr) return emit(run_draw(draw), draw.common, out);
    if (*st) return emit(run_selftest(selftest), selftest.common, out);
  } catch (const DisconnectedGraphError& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const SamplingFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const NotTransitiveError& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerdict;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace cayley
