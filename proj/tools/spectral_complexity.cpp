// Command-line front end: complexity, benchmark, mds and descriptors subcommands.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "spectral_complexity.hpp"

namespace sc = spectral_complexity;

namespace {

constexpr int exit_input = 2;
constexpr int exit_numeric = 3;

struct DataFlags {
  std::string input;
  std::string label_col = "label";
  std::string reduce = "passthrough";
};

struct ParamFlags {
  int M = 100;
  int E = 100;
  int k = 3;
  std::uint64_t seed = 42;
  bool no_row_normalize = false;
  bool exclude_self = false;
  unsigned threads = 1;
};

unsigned default_threads() {
  if (const char* env = std::getenv("SPECTRAL_COMPLEXITY_THREADS")) {
    try {
      const auto v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid SPECTRAL_COMPLEXITY_THREADS='" << env << "'\n";
  }
  return 1;
}

void add_data_flags(CLI::App* cmd, DataFlags& f, bool input_required = true) {
  auto* opt = cmd->add_option("--input", f.input, "CSV file, or JSON descriptor of a float32 matrix");
  if (input_required) opt->required();
  cmd->add_option("--label-col", f.label_col, "CSV column holding class labels")->capture_default_str();
  cmd->add_option("--reduce", f.reduce, "passthrough | pca:<d> | pca:rate=<r>")->capture_default_str();
}

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--M", f.M, "Monte-Carlo samples per source class")->capture_default_str();
  cmd->add_option("--E", f.E, "samples per target class")->capture_default_str();
  cmd->add_option("--k", f.k, "neighbour count of the density estimator")->capture_default_str();
  cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd->add_flag("--no-row-normalize", f.no_row_normalize, "keep raw similarity rows before Bray-Curtis");
  cmd->add_flag("--exclude-self", f.exclude_self, "leave the query out of its own class's neighbours");
  f.threads = default_threads();
  cmd->add_option("--threads", f.threads, "worker threads (env SPECTRAL_COMPLEXITY_THREADS)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

sc::RunOptions run_options(const DataFlags& data, const ParamFlags& p) {
  sc::RunOptions opts;
  opts.params.M = p.M;
  opts.params.E = p.E;
  opts.params.k = p.k;
  opts.params.seed = p.seed;
  opts.params.reduction = sc::Reduction::parse(data.reduce);
  opts.params.row_normalize = !p.no_row_normalize;
  opts.params.exclude_self = p.exclude_self;
  opts.params.validate();
  opts.threads = p.threads;
  return opts;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    sc::write_text(path, text);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dataset classification complexity from the Laplacian spectrum of class similarities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sc::tool_version);

  // complexity
  DataFlags cx_data;
  ParamFlags cx_params;
  std::string cx_out, cx_metric = "cmsauls,csg,auls", cx_spectrum_svg;
  bool cx_descriptors = false, cx_laplacian = false;
  auto* complexity = app.add_subcommand("complexity", "score one dataset (reduce, similarity, spectrum, scores)");
  add_data_flags(complexity, cx_data);
  add_param_flags(complexity, cx_params);
  complexity->add_option("--metric", cx_metric, "scores to emit")->capture_default_str();
  complexity->add_flag("--descriptors", cx_descriptors, "also compute F1-F3, N1-N3, T2");
  complexity->add_flag("--emit-laplacian", cx_laplacian, "store L in the report");
  complexity->add_option("--spectrum-svg", cx_spectrum_svg, "write an index-vs-eigenvalue plot");
  complexity->add_option("--out", cx_out, "report path (default: stdout)");

  // benchmark
  sc::SuiteConfig suite_cfg;
  ParamFlags bm_params;
  std::string bm_out, bm_svg;
  bool bm_descriptors = false;
  auto* benchmark = app.add_subcommand("benchmark", "correlate metrics with the Bayes error of Gaussian suites");
  benchmark->add_option("--classes", suite_cfg.classes, "classes per dataset")->capture_default_str();
  benchmark->add_option("--dim", suite_cfg.dim, "feature dimension")->capture_default_str();
  benchmark->add_option("--per-class", suite_cfg.per_class, "samples per class")->capture_default_str();
  benchmark->add_option("--separations", suite_cfg.separations, "comma-separated class separations")
      ->delimiter(',')
      ->capture_default_str();
  benchmark->add_option("--trials", suite_cfg.trials, "Monte-Carlo trials of the Bayes-error oracle")
      ->capture_default_str();
  add_param_flags(benchmark, bm_params);
  benchmark->add_flag("--descriptors", bm_descriptors, "also correlate the classical descriptors");
  benchmark->add_option("--out", bm_out, "report path (default: stdout)");
  benchmark->add_option("--svg", bm_svg, "write a cmsAULS vs oracle-error scatter");

  // mds
  DataFlags mds_data;
  ParamFlags mds_params;
  std::string mds_report, mds_svg_path, mds_out;
  auto* mds = app.add_subcommand("mds", "2-D inter-class map from U = 1 - W");
  mds->add_option("--from-report", mds_report, "reuse W from a complexity report");
  add_data_flags(mds, mds_data, false);
  add_param_flags(mds, mds_params);
  mds->add_option("--svg", mds_svg_path, "write a labeled scatter plot");
  mds->add_option("--out", mds_out, "coordinates JSON (default: stdout)");

  // descriptors
  DataFlags ds_data;
  std::string ds_out;
  auto* descriptors = app.add_subcommand("descriptors", "classical complexity descriptors");
  add_data_flags(descriptors, ds_data);
  descriptors->add_option("--out", ds_out, "JSON path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  try {
    if (*complexity) {
      const auto opts_base = run_options(cx_data, cx_params);
      auto opts = opts_base;
      opts.descriptors = cx_descriptors;
      const auto metrics = sc::MetricSelection::parse(cx_metric);
      const auto ds = sc::load_dataset(cx_data.input, cx_data.label_col);
      const auto result = sc::run_complexity(ds, opts);
      const auto report = sc::make_report(ds, opts, result, metrics, cx_laplacian);
      write_or_print(cx_out, sc::dump_report(sc::to_json(report)));
      if (!cx_spectrum_svg.empty()) sc::emit_spectrum_svg(result.spectrum, cx_spectrum_svg);
    } else if (*benchmark) {
      auto opts = run_options(DataFlags{}, bm_params);
      opts.descriptors = bm_descriptors;
      suite_cfg.seed = bm_params.seed;
      const auto suite = sc::gen_gaussian_suite(suite_cfg);
      const auto result = sc::run_benchmark(suite, opts);
      write_or_print(bm_out, sc::dump_report(sc::to_json(result, suite_cfg, opts)));
      if (!bm_svg.empty()) sc::write_text(bm_svg, sc::benchmark_svg(result));
    } else if (*mds) {
      sc::Matrix W;
      std::vector<std::string> names;
      if (!mds_report.empty()) {
        const auto report = sc::load_report(mds_report);
        W = report.W;
        names = report.dataset.class_names;
      } else if (!mds_data.input.empty()) {
        const auto opts = run_options(mds_data, mds_params);
        const auto ds = sc::load_dataset(mds_data.input, mds_data.label_col);
        W = sc::run_complexity(ds, opts).affinity.values;
        names = ds.class_names;
      } else {
        throw sc::InputError("mds needs --from-report or --input");
      }
      const sc::Matrix U = (sc::Matrix::Ones(W.rows(), W.cols()) - W);
      const auto map = sc::classical_mds(U);
      write_or_print(mds_out, sc::dump_report(sc::to_json(map, names)));
      if (!mds_svg_path.empty()) sc::emit_mds_svg(map, names, mds_svg_path);
    } else if (*descriptors) {
      sc::HyperParams params;
      params.reduction = sc::Reduction::parse(ds_data.reduce);
      const auto ds = sc::load_dataset(ds_data.input, ds_data.label_col);
      const auto emb = sc::apply_reduction(ds, params);
      const auto d = sc::compute_descriptors(emb);
      auto j = sc::detail::descriptors_json(d);
      j["n2_skipped_points"] = d.n2_skipped_points;
      write_or_print(ds_out, sc::dump_report(j));
    }
  } catch (const sc::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const sc::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  }
  return 0;
}
