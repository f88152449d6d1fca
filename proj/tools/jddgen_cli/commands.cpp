#include "jddgen_cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "jddgen/chain.hpp"
#include "jddgen/edge_list.hpp"
#include "jddgen/graph.hpp"
#include "jddgen/long_run.hpp"
#include "jddgen/metrics.hpp"
#include "jddgen/parallel.hpp"
#include "jddgen/short_runs.hpp"

namespace jddgen::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kDefaultEpsilon = 4.5e-5;

class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

[[noreturn]] void fail(int code, const std::string& message) { throw CommandError(code, message); }

/// Reads option values from JSON. A run manifest's "config" object applies
/// to the subcommand named by its "command" field; otherwise each top-level
/// object is a section named after a subcommand. Options given on the
/// command line take precedence.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json doc = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames().front();
      if (opt->count() > 0) {
        doc[name] = opt->as<std::string>();
      } else if (default_also && !opt->get_default_str().empty()) {
        doc[name] = opt->get_default_str();
      }
    }
    return doc.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    auto add_section = [&](const std::string& command, const json& section) {
      for (const auto& [key, value] : section.items()) {
        if (value.is_object() || value.is_array() || value.is_null()) continue;
        CLI::ConfigItem item;
        item.parents = {command};
        item.name = key;
        item.inputs.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        items.push_back(std::move(item));
      }
    };
    if (doc.contains("command") && doc.contains("config")) {
      add_section(doc["command"].get<std::string>(), doc["config"]);
    } else {
      for (const auto& [key, value] : doc.items()) {
        if (value.is_object()) add_section(key, value);
      }
    }
    return items;
  }
};

// --- shared helpers ---------------------------------------------------------

LabeledGraph load_input(const std::string& path) {
  try {
    return load_edge_list(fs::path(path));
  } catch (const ParseError& e) {
    fail(kIo, path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    fail(kIo, e.what());
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail(kIo, "cannot create directory " + dir.string());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << content;
  file.close();
  if (!file) fail(kIo, "cannot write " + path.string());
}

std::string sample_name(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof name, "sample_%06zu.edges", index);
  return name;
}

std::string edge_list_text(std::span<const Edge> sorted_edges, std::span<const std::int64_t> labels) {
  std::ostringstream os;
  write_edge_list(os, sorted_edges, labels);
  return os.str();
}

unsigned resolve_workers(unsigned requested) {
  return requested > 0 ? requested : default_worker_count();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json summary_json(const Summary& s) {
  json q = json::object();
  for (std::size_t i = 0; i < s.quantiles.size(); ++i) {
    std::ostringstream key;
    key << kSummaryQuantiles[i];
    q[key.str()] = s.quantiles[i];
  }
  return {
      {"count", s.count},
      {"mean", s.mean},
      {"variance", s.variance},
      {"min", s.min},
      {"max", s.max},
      {"quantiles", q},
      {"histogram", {{"edges", s.histogram.edges}, {"counts", s.histogram.counts}}},
  };
}

json tally_json(const OutcomeTally& tally) {
  json out = json::object();
  for (StepTag tag : {StepTag::Accepted, StepTag::RejectedNotSimple, StepTag::RejectedNoDegreeMatch,
                      StepTag::RejectedDegenerate}) {
    out[std::string(to_string(tag))] = tally[tag];
  }
  return out;
}

std::string format_double(double value) {
  std::ostringstream os;
  os << std::setprecision(17) << value;
  return os.str();
}

// --- generate -----------------------------------------------------------------

struct GenerateOptions {
  std::string input;
  double epsilon = kDefaultEpsilon;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::string out;
  double steps_per_edge = -1.0;
  unsigned workers = 0;
};

int cmd_generate(const GenerateOptions& opt, std::ostream& log) {
  const auto start = Clock::now();
  if (!(opt.epsilon > 0.0 && opt.epsilon < 1.0)) fail(kUsage, "--epsilon must lie in (0, 1)");
  const LabeledGraph input = load_input(opt.input);
  const Graph& g = input.graph;
  const std::uint64_t m = g.edge_count();
  const std::uint64_t steps = opt.steps_per_edge >= 0.0
                                  ? static_cast<std::uint64_t>(std::llround(opt.steps_per_edge * m))
                                  : short_runs::run_length(opt.epsilon, m);
  if (steps > 0 && opt.samples > 0 && m < 2) fail(kUsage, "the swap chain needs at least two edges");

  const DegreeHistogram f0 = degree_histogram(g);
  const JointDegreeMatrix jdd0 = joint_degree_matrix(g);
  const unsigned workers = resolve_workers(opt.workers);
  std::vector<std::vector<Edge>> samples(opt.samples);
  std::atomic<std::size_t> invalid{0};
  short_runs::run_chains(g, opt.samples, steps, opt.seed, workers, [&](std::size_t c, const Graph& s) {
    if (!validate(s, f0, jdd0).ok()) ++invalid;
    samples[c] = s.sorted_edges();
  });
  if (invalid > 0) fail(kDiagnosticFailure, std::to_string(invalid.load()) + " samples failed validation");

  const fs::path out_dir(opt.out);
  ensure_directory(out_dir);
  json files = json::array();
  json seeds = json::array();
  for (std::size_t c = 0; c < samples.size(); ++c) {
    const std::string name = sample_name(c);
    write_file(out_dir / name, edge_list_text(samples[c], input.labels));
    files.push_back(name);
    seeds.push_back(opt.seed + c);
  }

  json config = {{"input", opt.input}, {"epsilon", opt.epsilon}, {"samples", opt.samples},
                 {"seed", opt.seed},   {"out", opt.out}};
  if (opt.steps_per_edge >= 0.0) config["steps-per-edge"] = opt.steps_per_edge;
  const json manifest = {
      {"command", "generate"},
      {"config", config},
      {"run",
       {{"vertices", g.vertex_count()},
        {"edges", m},
        {"steps", steps},
        {"steps_per_edge", m ? static_cast<double>(steps) / static_cast<double>(m) : 0.0},
        {"seeds", seeds},
        {"files", files},
        {"workers", workers},
        {"wall_time_s", seconds_since(start)}}},
  };
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  log << "generate: " << samples.size() << " samples of " << steps << " steps (N/|E| = "
      << (m ? static_cast<double>(steps) / static_cast<double>(m) : 0.0) << ") in " << out_dir.string()
      << "\n";
  return kSuccess;
}

// --- diagnose -----------------------------------------------------------------

struct DiagnoseOptions {
  std::string input;
  double steps_per_edge = 0.0;
  std::uint64_t k_hint = 1;
  double fraction = 0.1;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t max_samples = 0;
  std::size_t bins = 20;
  unsigned workers = 0;
};

int cmd_diagnose(const DiagnoseOptions& opt, std::ostream& log) {
  const auto start = Clock::now();
  if (!(opt.fraction > 0.0 && opt.fraction <= 1.0)) fail(kUsage, "--fraction must lie in (0, 1]");
  if (opt.bins == 0) fail(kUsage, "--bins must be positive");
  const LabeledGraph input = load_input(opt.input);
  const Graph& g = input.graph;
  const std::uint64_t m = g.edge_count();
  const std::uint64_t steps = opt.steps_per_edge > 0.0
                                  ? static_cast<std::uint64_t>(std::llround(opt.steps_per_edge * m))
                                  : 128 * opt.k_hint * m;

  const fs::path out_dir(opt.out);
  const fs::path sample_dir = out_dir / "samples";
  ensure_directory(sample_dir);

  const DegreeHistogram f0 = degree_histogram(g);
  const JointDegreeMatrix jdd0 = joint_degree_matrix(g);
  long_run::LongRunConfig config;
  config.steps = steps;
  config.seed = opt.seed;
  config.tracked_fraction = opt.fraction;
  if (opt.max_samples > 0) config.max_samples = opt.max_samples;
  config.workers = resolve_workers(opt.workers);

  json files = json::array();
  std::size_t invalid = 0;
  long_run::LongRunResult result;
  try {
    result = long_run::one_long_run(g, config, [&](std::size_t index, std::uint64_t, const Graph& s) {
      if (!validate(s, f0, jdd0).ok()) ++invalid;
      const std::string name = sample_name(index);
      write_file(sample_dir / name, edge_list_text(s.sorted_edges(), input.labels));
      files.push_back("samples/" + name);
    });
  } catch (const ConfigError& e) {
    fail(kDiagnosticFailure, std::string("cannot diagnose: ") + e.what() +
                                 "; raise --steps-per-edge or --k-hint");
  }
  if (invalid > 0) fail(kDiagnosticFailure, std::to_string(invalid) + " samples failed validation");

  std::ostringstream csv;
  csv << "pair_u,pair_v,k,delta_bic_at_k,exhausted_flag\n";
  std::vector<double> k_per_edge;
  std::size_t exhausted = 0;
  for (const auto& r : result.per_edge) {
    csv << input.labels[r.pair.u] << ',' << input.labels[r.pair.v] << ',' << r.k << ','
        << format_double(r.delta_bic) << ',' << (r.exhausted ? 1 : 0) << '\n';
    k_per_edge.push_back(static_cast<double>(r.k) / static_cast<double>(m));
    exhausted += r.exhausted ? 1 : 0;
  }
  write_file(out_dir / "thinning.csv", csv.str());

  const double dm = static_cast<double>(m);
  const json summary = {
      {"vertices", g.vertex_count()},
      {"edges", m},
      {"steps", steps},
      {"steps_per_edge", static_cast<double>(steps) / dm},
      {"realized_pairs", result.realized_pairs},
      {"tracked", result.tracked.size()},
      {"exhausted", exhausted},
      {"k_star", result.k_star},
      {"k_star_per_edge", static_cast<double>(result.k_star) / dm},
      {"method_a_steps_per_edge", static_cast<double>(short_runs::run_length(kDefaultEpsilon, m)) / dm},
      {"sample_count", result.sample_count},
      {"k_per_edge", summary_json(summarize(k_per_edge, opt.bins))},
      {"outcomes", tally_json(result.tally)},
  };
  write_file(out_dir / "summary.json", summary.dump(2) + "\n");

  json config_json = {{"input", opt.input}, {"fraction", opt.fraction}, {"seed", opt.seed},
                      {"out", opt.out},     {"k-hint", opt.k_hint},     {"bins", opt.bins}};
  if (opt.steps_per_edge > 0.0) config_json["steps-per-edge"] = opt.steps_per_edge;
  if (opt.max_samples > 0) config_json["max-samples"] = opt.max_samples;
  const json manifest = {
      {"command", "diagnose"},
      {"config", config_json},
      {"run",
       {{"steps", steps},
        {"k_star", result.k_star},
        {"files", files},
        {"workers", config.workers},
        {"wall_time_s", seconds_since(start)}}},
  };
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  log << "diagnose: K = " << steps << ", k* = " << result.k_star << " (k*/|E| = "
      << static_cast<double>(result.k_star) / dm << "), " << result.sample_count << " samples\n";
  return kSuccess;
}

// --- metrics ------------------------------------------------------------------

struct MetricRow {
  std::string file;
  MetricSample sample;
};

struct MetricSet {
  std::vector<MetricRow> rows;
  std::vector<std::string> warnings;
};

bool is_graph_file(const fs::directory_entry& entry) {
  if (!entry.is_regular_file()) return false;
  const std::string name = entry.path().filename().string();
  const std::string ext = entry.path().extension().string();
  return !name.empty() && name.front() != '.' && ext != ".json" && ext != ".csv";
}

MetricSet metrics_for_directory(const fs::path& dir, unsigned workers) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(kIo, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (is_graph_file(entry)) files.push_back(entry.path());
  }
  if (ec) fail(kIo, "cannot list " + dir.string());
  if (files.empty()) fail(kIo, "no graph files in " + dir.string());
  std::sort(files.begin(), files.end());

  std::vector<std::optional<MetricSample>> computed(files.size());
  std::vector<std::string> errors(files.size());
  parallel_for(files.size(), workers, [&](std::size_t i) {
    try {
      computed[i] = compute_metrics(load_edge_list(files[i]).graph);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  MetricSet set;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].filename().string();
    if (computed[i]) {
      set.rows.push_back({name, *computed[i]});
    } else {
      set.warnings.push_back(name + ": " + errors[i]);
    }
  }
  return set;
}

struct MetricsOptions {
  std::string in;
  std::string out;
  std::string summary;
  std::size_t bins = 20;
  unsigned workers = 0;
};

int cmd_metrics(const MetricsOptions& opt, std::ostream& log, std::ostream& err) {
  if (opt.bins == 0) fail(kUsage, "--bins must be positive");
  const MetricSet set = metrics_for_directory(opt.in, resolve_workers(opt.workers));
  for (const auto& w : set.warnings) err << "warning: skipped " << w << "\n";

  std::ostringstream csv;
  csv << "file,clustering,triangles,diameter,lambda_max,lambda_residual,lambda_converged\n";
  std::vector<MetricSample> samples;
  for (const auto& row : set.rows) {
    const MetricSample& s = row.sample;
    csv << row.file << ',' << format_double(s.clustering) << ',' << s.triangles << ',' << s.diameter
        << ',' << format_double(s.lambda_max) << ',' << format_double(s.lambda_residual) << ','
        << (s.lambda_converged ? 1 : 0) << '\n';
    samples.push_back(s);
  }
  const fs::path out_path(opt.out);
  if (out_path.has_parent_path()) ensure_directory(out_path.parent_path());
  write_file(out_path, csv.str());

  json metrics = json::object();
  if (!samples.empty()) {
    for (std::size_t k = 0; k < std::size(kMetricNames); ++k) {
      metrics[kMetricNames[k]] = summary_json(summarize(metric_column(samples, k), opt.bins));
    }
  }
  const std::size_t unconverged = static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const MetricSample& s) { return !s.lambda_converged; }));
  json config = {{"in", opt.in}, {"out", opt.out}, {"bins", opt.bins}};
  if (!opt.summary.empty()) config["summary"] = opt.summary;
  const json summary = {
      {"command", "metrics"},
      {"config", config},
      {"input", opt.in},
      {"count", samples.size()},
      {"warnings", set.warnings.size()},
      {"skipped", set.warnings},
      {"lambda_unconverged", unconverged},
      {"metrics", metrics},
  };
  fs::path summary_path = opt.summary.empty() ? fs::path(opt.out).replace_extension(".summary.json")
                                              : fs::path(opt.summary);
  write_file(summary_path, summary.dump(2) + "\n");
  log << "metrics: " << samples.size() << " graphs, " << set.warnings.size() << " warnings -> " << opt.out
      << "\n";
  return kSuccess;
}

// --- compare ------------------------------------------------------------------

using MetricColumns = std::map<std::string, std::vector<double>>;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    fields.push_back(field);
  }
  return fields;
}

bool is_metric_name(const std::string& name) {
  return std::find(std::begin(kMetricNames), std::end(kMetricNames), name) != std::end(kMetricNames);
}

MetricColumns read_metric_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(kIo, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) fail(kIo, path.string() + " is empty");
  const auto header = split_csv(line);
  MetricColumns columns;
  for (const auto& name : header) {
    if (is_metric_name(name)) columns[name];
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      fail(kIo, path.string() + ": line " + std::to_string(line_no) + " has the wrong field count");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (!is_metric_name(header[i])) continue;
      try {
        columns[header[i]].push_back(std::stod(fields[i]));
      } catch (const std::exception&) {
        fail(kIo, path.string() + ": line " + std::to_string(line_no) + " has a non-numeric metric");
      }
    }
  }
  return columns;
}

MetricColumns load_metric_columns(const fs::path& path, unsigned workers, std::ostream& err) {
  if (fs::is_directory(path)) {
    const MetricSet set = metrics_for_directory(path, workers);
    for (const auto& w : set.warnings) err << "warning: skipped " << w << "\n";
    std::vector<MetricSample> samples;
    for (const auto& row : set.rows) samples.push_back(row.sample);
    MetricColumns columns;
    for (std::size_t k = 0; k < std::size(kMetricNames); ++k) {
      columns[kMetricNames[k]] = metric_column(samples, k);
    }
    return columns;
  }
  return read_metric_csv(path);
}

struct CompareOptions {
  std::string a;
  std::string b;
  std::string out;
  double threshold = 0.1;
  unsigned workers = 0;
};

double variance_of(const std::vector<double>& v) {
  return summarize(v, 1).variance;
}

int cmd_compare(const CompareOptions& opt, std::ostream& log, std::ostream& err) {
  const unsigned workers = resolve_workers(opt.workers);
  const MetricColumns a = load_metric_columns(opt.a, workers, err);
  const MetricColumns b = load_metric_columns(opt.b, workers, err);
  std::vector<std::string> names_a, names_b;
  for (const auto& [name, _] : a) names_a.push_back(name);
  for (const auto& [name, _] : b) names_b.push_back(name);
  if (names_a != names_b || names_a.empty()) fail(kIo, "the two inputs carry different metric sets");

  json metrics = json::object();
  json verdicts = json::array();
  bool all_similar = true;
  for (const char* name : kMetricNames) {
    auto ia = a.find(name);
    if (ia == a.end()) continue;
    const auto& va = ia->second;
    const auto& vb = b.at(name);
    if (va.empty() || vb.empty()) fail(kIo, std::string("no samples for metric ") + name);
    const double ks = ks_distance(va, vb);
    const double var_a = variance_of(va);
    const double var_b = variance_of(vb);
    const bool similar = ks < opt.threshold;
    all_similar = all_similar && similar;
    json entry = {{"ks", ks},
                  {"count_a", va.size()},
                  {"count_b", vb.size()},
                  {"mean_a", summarize(va, 1).mean},
                  {"mean_b", summarize(vb, 1).mean},
                  {"variance_a", var_a},
                  {"variance_b", var_b},
                  {"similar", similar}};
    entry["variance_ratio"] = var_b > 0.0 ? json(var_a / var_b) : json(nullptr);
    metrics[name] = entry;

    std::ostringstream line;
    line << name << ": KS = " << std::setprecision(4) << ks << (similar ? " < " : " >= ") << opt.threshold
         << (similar ? ", distributions are similar" : ", distributions differ");
    verdicts.push_back(line.str());
    log << line.str() << "\n";
  }

  const json config = {{"a", opt.a}, {"b", opt.b}, {"out", opt.out}, {"threshold", opt.threshold}};
  const json report = {{"command", "compare"},  {"config", config},
                       {"a", opt.a},           {"b", opt.b},         {"threshold", opt.threshold},
                       {"metrics", metrics},    {"verdicts", verdicts}, {"all_similar", all_similar}};
  const fs::path out_path(opt.out);
  if (out_path.has_parent_path()) ensure_directory(out_path.parent_path());
  write_file(out_path, report.dump(2) + "\n");
  return kSuccess;
}

// With --config and no subcommand on the command line, the "command" field of
// a manifest names it.
std::string manifest_command(const std::vector<std::string>& args) {
  static const std::set<std::string> commands{"generate", "diagnose", "metrics", "compare"};
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (commands.count(args[i]) != 0) return {};
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return {};
  std::ifstream in(path);
  const json doc = json::parse(in, nullptr, false);
  if (!doc.is_object() || !doc.contains("command") || !doc["command"].is_string()) return {};
  const std::string command = doc["command"].get<std::string>();
  return commands.count(command) != 0 ? command : std::string{};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint-degree-preserving random graph ensembles with mixing diagnostics", "jddgen"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON options file or run manifest; flags take precedence");
  app.fallthrough();

  auto add_workers = [](CLI::App* sub, unsigned& workers) {
    sub->add_option("--workers", workers, "Worker threads (default: $JDDGEN_WORKERS or all cores)");
  };

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Independent samples from many short chains");
  generate->add_option("--input", gen.input, "Edge-list file of the initial graph")->required();
  generate->add_option("--epsilon", gen.epsilon, "Distance to stationarity per edge")->capture_default_str();
  generate->add_option("--samples", gen.samples, "Number of chains / samples M")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Seed of chain 0; chain c uses seed + c")->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--steps-per-edge", gen.steps_per_edge, "Override N as a multiple of |E|");
  add_workers(generate, gen.workers);

  DiagnoseOptions diag;
  auto* diagnose = app.add_subcommand("diagnose", "Thinning factor from one long chain, plus thinned samples");
  diagnose->add_option("--input", diag.input, "Edge-list file of the initial graph")->required();
  diagnose->add_option("--steps-per-edge", diag.steps_per_edge, "Chain length K as a multiple of |E|");
  diagnose->add_option("--k-hint", diag.k_hint, "Without --steps-per-edge, K = 128 * k-hint * |E|")
      ->capture_default_str();
  diagnose->add_option("--fraction", diag.fraction, "Tracked pairs as a fraction of |E|")->capture_default_str();
  diagnose->add_option("--seed", diag.seed, "Chain seed")->capture_default_str();
  diagnose->add_option("--out", diag.out, "Output directory")->required();
  diagnose->add_option("--max-samples", diag.max_samples, "Keep at most this many thinned samples");
  diagnose->add_option("--bins", diag.bins, "Histogram bins for k/|E|")->capture_default_str();
  add_workers(diagnose, diag.workers);

  MetricsOptions met;
  auto* metrics = app.add_subcommand("metrics", "Graph metrics over a directory of edge lists");
  metrics->add_option("--in", met.in, "Directory of edge-list files")->required();
  metrics->add_option("--out", met.out, "Metric CSV to write")->required();
  metrics->add_option("--summary", met.summary, "Summary JSON (default: <out>.summary.json)");
  metrics->add_option("--bins", met.bins, "Histogram bins")->capture_default_str();
  add_workers(metrics, met.workers);

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "KS comparison of two ensembles");
  compare->add_option("--a", cmp.a, "Sample directory or metric CSV")->required();
  compare->add_option("--b", cmp.b, "Sample directory or metric CSV")->required();
  compare->add_option("--out", cmp.out, "Report JSON to write")->required();
  compare->add_option("--threshold", cmp.threshold, "KS distance below which metrics agree")
      ->capture_default_str();
  add_workers(compare, cmp.workers);

  std::vector<std::string> argv = args;
  if (std::string command = manifest_command(args); !command.empty()) argv.insert(argv.begin(), command);
  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (diagnose->parsed()) return cmd_diagnose(diag, out);
    if (metrics->parsed()) return cmd_metrics(met, out, err);
    if (compare->parsed()) return cmd_compare(cmp, out, err);
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}

}  // namespace jddgen::cli
