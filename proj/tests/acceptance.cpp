// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <json.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unistd.h>

#include "jddgen/chain.hpp"
#include "jddgen/edge_list.hpp"
#include "jddgen/graph.hpp"
#include "jddgen/long_run.hpp"
#include "jddgen/metrics.hpp"
#include "jddgen/parallel.hpp"
#include "jddgen/short_runs.hpp"
#include "jddgen_cli/commands.hpp"
#include "support/graphs.hpp"

namespace {

using namespace jddgen;
namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Verdict {
  enum Kind { Pass, Fail, Skip } kind = Fail;
  std::string detail;
};

Verdict pass_if(bool ok, std::string detail) { return {ok ? Verdict::Pass : Verdict::Fail, std::move(detail)}; }

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// The 300-vertex graph used by the ensemble criteria: a ring lattice with
// three neighbors per side plus 100 random chords, |E| = 1000. Its start is
// far more clustered than a mixed sample.
Graph ensemble_graph() { return testing::clustered_ring(300, 3, 100, 7); }

unsigned workers() { return default_worker_count(); }

// --- 1 -------------------------------------------------------------------------

Verdict jdd_conservation() {
  const auto start = Clock::now();
  const Graph g = testing::clustered_ring(300, 13, 100, 1);
  const auto f = degree_histogram(g);
  const auto jdd = joint_degree_matrix(g);
  Chain chain(g, 2024);
  const std::uint64_t steps = 1000000, checkpoints = 100;
  std::uint64_t matched = 0;
  for (std::uint64_t c = 0; c < checkpoints; ++c) {
    while (chain.steps() < (c + 1) * steps / checkpoints) chain.step();
    const bool same = joint_degree_matrix(chain.graph()) == jdd && validate(chain.graph(), f, jdd).ok();
    matched += same ? 1 : 0;
  }
  const double elapsed = seconds_since(start);
  return pass_if(matched == checkpoints && elapsed < 10.0,
                 fmt("|V| = %zu, |E| = %zu, %llu/%llu checkpoints exact, %llu accepted swaps, %.2f s (limit 10 s)",
                     g.vertex_count(), g.edge_count(), static_cast<unsigned long long>(matched),
                     static_cast<unsigned long long>(checkpoints),
                     static_cast<unsigned long long>(chain.tally()[StepTag::Accepted]), elapsed));
}

// --- 2 -------------------------------------------------------------------------

Verdict run_length_ratios() {
  const std::array<double, 4> eps{0.37, 6.7e-3, 4.5e-5, 3.06e-7};
  const std::array<double, 4> expected{1, 5, 10, 15};
  bool ok = true;
  std::string detail;
  for (std::uint64_t m : {4296ULL, 5484ULL, 405740ULL}) {
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const double ratio = static_cast<double>(short_runs::run_length(eps[i], m)) / static_cast<double>(m);
      ok = ok && std::abs(ratio - expected[i]) <= 0.01 * expected[i];
      if (m == 4296) detail += fmt("%s%g -> %.4f", i ? ", " : "N/|E|: ", eps[i], ratio);
    }
  }
  return pass_if(ok, detail + " (|E| in {4296, 5484, 405740}, tolerance 1%)");
}

// --- 3 -------------------------------------------------------------------------

Verdict decay_bound() {
  // Random (alpha, beta) uniform on the triangle alpha + beta <= 1.
  Rng rng(3);
  std::size_t violations = 0, checks = 0;
  double worst = 0.0, worst_sup = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    double alpha = rng.unit(), beta = rng.unit();
    if (alpha + beta > 1.0) {
      alpha = 1.0 - alpha;
      beta = 1.0 - beta;
    }
    short_runs::TwoStateEdgeModel model;
    model.alpha = alpha;
    model.beta = beta;
    const auto u = short_runs::stationary_distribution(model);
    for (double eps : {1e-2, 1e-5}) {
      const std::uint64_t n = short_runs::per_edge_run_length(model, eps);
      for (int start = 0; start < 2; ++start) {
        double p0 = start == 0 ? 1.0 : 0.0, p1 = 1.0 - p0;
        for (std::uint64_t t = 0; t < n; ++t) {
          const double q0 = p0 * (1.0 - alpha) + p1 * beta;
          const double q1 = p0 * alpha + p1 * (1.0 - beta);
          p0 = q0;
          p1 = q1;
        }
        const double dist = std::hypot(p0 - u.p_no_edge, p1 - u.p_edge);
        const double sup = std::max(std::abs(p0 - u.p_no_edge), std::abs(p1 - u.p_edge));
        ++checks;
        if (dist > eps) ++violations;
        worst = std::max(worst, dist / eps);
        worst_sup = std::max(worst_sup, sup / eps);
      }
    }
  }
  return pass_if(violations == 0, fmt("%zu/%zu (model, epsilon, start) cases exceed epsilon in the 2-norm; "
                                      "worst |p - u|_2 / epsilon = %.3f, worst sup-norm ratio = %.3f",
                                      violations, checks, worst, worst_sup));
}

// --- 4 -------------------------------------------------------------------------

// Written from the model definitions, independently of the library: the
// independence model has 3 parameters, the saturated Markov model 4.
double literal_delta_bic(const std::array<std::array<double, 2>, 2>& x) {
  const double total = x[0][0] + x[0][1] + x[1][0] + x[1][1];
  const double row[2] = {x[0][0] + x[0][1], x[1][0] + x[1][1]};
  const double col[2] = {x[0][0] + x[1][0], x[0][1] + x[1][1]};
  double g2_independent = 0.0, g2_markov = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (x[i][j] == 0.0) continue;
      const double fit_independent = row[i] * col[j] / total;
      const double fit_markov = x[i][j];
      g2_independent += x[i][j] * std::log(fit_independent / x[i][j]);
      g2_markov += x[i][j] * std::log(fit_markov / x[i][j]);
    }
  }
  g2_independent *= -2.0;
  g2_markov *= -2.0;
  const double bic_independent = g2_independent + 3.0 * std::log(total);
  const double bic_markov = g2_markov + 4.0 * std::log(total);
  return bic_independent - bic_markov;
}

Verdict delta_bic_oracle() {
  Rng rng(4);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t scale = std::array<std::uint64_t, 4>{5, 100, 10000, 1000000}[trial % 4];
    long_run::ContingencyTable t;
    std::array<std::array<double, 2>, 2> x{};
    do {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          t.x[i][j] = rng.index(scale + 1);
          x[i][j] = static_cast<double>(t.x[i][j]);
        }
      }
    } while (t.total() == 0);
    const double want = literal_delta_bic(x);
    const double got = long_run::delta_bic(t);
    // A single transition gives exactly 0 on both sides.
    const double rel = got == want ? 0.0 : std::abs(got - want) / std::abs(want);
    worst = std::max(worst, rel);
    if (!(rel <= 1e-12)) ++failures;
  }
  return pass_if(failures == 0,
                 fmt("1000 random tables, %d outside tolerance, worst relative error %.2e (limit 1e-12)", failures, worst));
}

// --- 5 -------------------------------------------------------------------------

Verdict thinning_detection() {
  bool ok = true;
  std::string detail;
  for (double a : {0.5, 0.1, 0.01}) {
    const double s = 2.0 * a;
    std::uint64_t k0 = 1;
    while (!(std::pow(1.0 - s, static_cast<double>(k0)) < 0.05)) k0 *= 2;
    int inside = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      const EdgeSeries series = testing::two_state_series(a, a, 100000, 9000 + trial);
      const std::uint64_t k = long_run::find_thinning_factor(series).k;
      inside += (k == k0 || k == 2 * k0 || 2 * k == k0) ? 1 : 0;
    }
    ok = ok && inside >= 90;
    detail += fmt("%salpha=beta=%g: k0 = %llu, %d/100 within one power of 2", detail.empty() ? "" : "; ", a,
                  static_cast<unsigned long long>(k0), inside);
  }
  return pass_if(ok, detail + " (need >= 90)");
}

// --- 6 and 9 (synthetic part) ----------------------------------------------------

class ScratchDir {
 public:
  ScratchDir() : path_(fs::temp_directory_path() / ("jddgen_acceptance_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

int invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

void write_graph(const fs::path& p, const Graph& g) {
  std::ofstream out(p);
  write_edge_list(out, g);
}

struct MethodComparison {
  json report;
  json diagnose_summary;
  std::size_t samples_a = 0;
  std::size_t samples_b = 0;
  double seconds = 0.0;
};

MethodComparison compare_methods(const ScratchDir& dir) {
  const auto start = Clock::now();
  write_graph(dir / "graph.txt", ensemble_graph());
  const std::string input = (dir / "graph.txt").string();
  MethodComparison c;
  if (invoke({"generate", "--input", input, "--epsilon", "4.5e-5", "--samples", "200", "--seed", "1", "--out",
           (dir / "method_a").string()}) != 0) {
    throw std::runtime_error("generate failed");
  }
  if (invoke({"diagnose", "--input", input, "--steps-per-edge", "8192", "--fraction", "0.1", "--seed", "2",
           "--max-samples", "200", "--out", (dir / "method_b").string()}) != 0) {
    throw std::runtime_error("diagnose failed");
  }
  if (invoke({"compare", "--a", (dir / "method_a").string(), "--b", (dir / "method_b" / "samples").string(), "--out",
           (dir / "compare.json").string(), "--threshold", "0.1"}) != 0) {
    throw std::runtime_error("compare failed");
  }
  c.report = read_json(dir / "compare.json");
  c.diagnose_summary = read_json(dir / "method_b" / "summary.json");
  c.samples_a = c.report["metrics"]["clustering"]["count_a"];
  c.samples_b = c.report["metrics"]["clustering"]["count_b"];
  c.seconds = seconds_since(start);
  return c;
}

Verdict method_agreement(const MethodComparison& c) {
  bool ok = c.samples_a == 200 && c.samples_b == 200 && c.seconds < 300.0;
  std::string detail = fmt("%zu vs %zu samples, k* = %llu (k*/|E| = %.2f):", c.samples_a, c.samples_b,
                           static_cast<unsigned long long>(c.diagnose_summary["k_star"].get<std::uint64_t>()),
                           c.diagnose_summary["k_star_per_edge"].get<double>());
  for (const char* name : kMetricNames) {
    const double ks = c.report["metrics"][name]["ks"];
    ok = ok && ks < 0.1;
    detail += fmt(" %s %.3f", name, ks);
  }
  return pass_if(ok, detail + fmt(" (KS limit 0.1), %.1f s (limit 300 s)", c.seconds));
}

// --- 7 -------------------------------------------------------------------------

std::vector<MetricSample> ensemble_metrics(const Graph& g, double epsilon, std::size_t count, std::uint64_t seed) {
  std::vector<MetricSample> out(count);
  const std::uint64_t steps = short_runs::run_length(epsilon, g.edge_count());
  short_runs::run_chains(g, count, steps, seed, workers(),
                         [&](std::size_t c, const Graph& s) { out[c] = compute_metrics(s); });
  return out;
}

Verdict epsilon_sweep() {
  const Graph g = ensemble_graph();
  const std::size_t count = 3000;
  const auto n1 = ensemble_metrics(g, 0.37, count, 100000);
  const auto n10 = ensemble_metrics(g, 4.5e-5, count, 200000);
  const auto n15 = ensemble_metrics(g, 3.06e-7, count, 300000);
  bool converged = true, separated = false;
  std::string detail = fmt("%zu samples each; KS(10|E|,15|E|) / KS(1|E|,15|E|):", count);
  for (std::size_t k = 0; k < std::size(kMetricNames); ++k) {
    const double late = ks_distance(metric_column(n10, k), metric_column(n15, k));
    const double early = ks_distance(metric_column(n1, k), metric_column(n15, k));
    converged = converged && late < 0.05;
    separated = separated || early > late;
    detail += fmt(" %s %.3f/%.3f", kMetricNames[k], late, early);
  }
  return pass_if(converged && separated, detail + " (need all late < 0.05 and some early > late)");
}

// --- 8 -------------------------------------------------------------------------

Verdict metric_oracles() {
  Rng rng(8);
  int triangle_failures = 0, lambda_failures = 0;
  double worst_lambda = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.index(12);
    const Graph g = testing::random_graph(n, rng.unit(), 1000 + trial);
    std::uint64_t tri = 0, closed = 0, paths = 0;
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        for (VertexId c = b + 1; c < n; ++c) {
          if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) ++tri;
        }
      }
    }
    // Ordered-by-center paths of length two, closed or open.
    for (VertexId center = 0; center < n; ++center) {
      for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) {
          if (a == center || b == center || !g.has_edge(center, a) || !g.has_edge(center, b)) continue;
          ++paths;
          if (g.has_edge(a, b)) ++closed;
        }
      }
    }
    const double clustering = paths == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(paths);
    if (triangles(g) != tri || global_clustering(g) != clustering) ++triangle_failures;
  }
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.index(29);
    const Graph g = testing::random_graph(n, 0.05 + 0.5 * rng.unit(), 5000 + trial);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const Edge& e : g.edges()) {
      lap(e.u, e.v) = lap(e.v, e.u) = -1.0;
      lap(e.u, e.u) += 1.0;
      lap(e.v, e.v) += 1.0;
    }
    const double dense =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(lap, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    const double err = std::abs(laplacian_lambda_max(g).value - dense);
    worst_lambda = std::max(worst_lambda, err);
    if (!(err <= 1e-6)) ++lambda_failures;
  }
  return pass_if(triangle_failures == 0 && lambda_failures == 0,
                 fmt("triangles/clustering: %d/500 mismatches (n <= 12, exact); lambda_max: %d/500 beyond 1e-6 "
                     "(n <= 30), worst %.2e",
                     triangle_failures, lambda_failures, worst_lambda));
}

// --- 9 -------------------------------------------------------------------------

Verdict dataset_check(const ScratchDir& dir) {
  const char* path = std::getenv("JDDGEN_DATASET");
  if (!path || !*path) return {Verdict::Skip, "set JDDGEN_DATASET to an edge-list file to run"};
  const char* k_hint = std::getenv("JDDGEN_DATASET_K_HINT");
  const std::string hint = k_hint && *k_hint ? k_hint : "1";
  if (invoke({"diagnose", "--input", path, "--k-hint", hint, "--fraction", "0.1", "--seed", "1", "--max-samples", "1",
           "--out", (dir / "dataset").string()}) != 0) {
    throw std::runtime_error("diagnose failed on " + std::string(path));
  }
  const json s = read_json(dir / "dataset" / "summary.json");
  const double method_b = s["k_star_per_edge"], method_a = s["method_a_steps_per_edge"];
  return pass_if(method_b >= method_a, fmt("%s (|E| = %llu): k*/|E| = %.2f vs N/|E| = %.2f, %llu/%llu exhausted",
                                           path, static_cast<unsigned long long>(s["edges"].get<std::uint64_t>()),
                                           method_b, method_a,
                                           static_cast<unsigned long long>(s["exhausted"].get<std::uint64_t>()),
                                           static_cast<unsigned long long>(s["tracked"].get<std::uint64_t>())));
}

}  // namespace

int main() {
  ScratchDir dir;
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Verdict()>& criterion) {
    Verdict v;
    const auto start = Clock::now();
    try {
      v = criterion();
    } catch (const std::exception& e) {
      v = {Verdict::Fail, std::string("error: ") + e.what()};
    }
    const char* tag = v.kind == Verdict::Pass ? "PASS" : v.kind == Verdict::Skip ? "SKIP" : "FAIL";
    if (v.kind == Verdict::Fail) ++failures;
    std::cout << tag << "  " << id << "  " << name << ": " << v.detail << fmt("  [%.1f s]", seconds_since(start))
              << std::endl;
  };

  report(1, "JDD conservation", jdd_conservation);
  report(2, "run length ratios", run_length_ratios);
  report(3, "two-state decay bound", decay_bound);
  report(4, "delta BIC oracle", delta_bic_oracle);
  report(5, "thinning detection", thinning_detection);
  MethodComparison comparison;
  report(6, "method A vs method B ensembles", [&] {
    comparison = compare_methods(dir);
    return method_agreement(comparison);
  });
  report(7, "epsilon sweep", epsilon_sweep);
  report(8, "metric oracles", metric_oracles);
  report(9, "k*/|E| >= N/|E| on a real dataset", [&] { return dataset_check(dir); });
  if (!comparison.diagnose_summary.is_null()) {
    std::cout << fmt("INFO  9  synthetic graph: k*/|E| = %.2f vs N/|E| = %.2f",
                     comparison.diagnose_summary["k_star_per_edge"].get<double>(),
                     comparison.diagnose_summary["method_a_steps_per_edge"].get<double>())
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : fmt("%d criteria failed", failures)) << std::endl;
  return failures == 0 ? 0 : 1;
}
