/*
 * Copyright 2026 The poda Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "force_plot.hpp"
#include "poda/allocation.hpp"
#include "poda/dataset.hpp"
#include "poda/diagnostics.hpp"
#include "poda/dividends.hpp"
#include "poda/metrics.hpp"
#include "poda/oracle.hpp"
#include "worker_pool.hpp"

namespace poda::cli {

namespace {

constexpr const char* kAllMetrics[] = {"aup", "discrepancy", "inclusion-mse", "inclusion-auc"};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json out{{"command", command},
                     {"model", model_path},
                     {"data", data_path},
                     {"background", background_path},
                     {"methods", methods},
                     {"sigma", sigma},
                     {"candidates", n_candidates},
                     {"include_uniform", include_uniform},
                     {"alpha", alpha},
                     {"seed", seed},
                     {"label_col", label_col},
                     {"metrics", metrics},
                     {"rows", rows},
                     {"max_samples", max_samples},
                     {"lime_samples", lime_samples},
                     {"report_gap", report_gap},
                     {"cases", cases},
                     {"format", format},
                     {"dividends", dividends}};
  out["background_size"] =
      background_size ? nlohmann::json(*background_size) : nlohmann::json("default");
  return out;
}

Sigma parse_sigma(const std::string& text) {
  if (lower(text) == "full") return Sigma::full();
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 1) {
    throw ConfigError("--sigma expects FULL or a positive integer, got '" + text + "'");
  }
  return Sigma::capped(value);
}

std::vector<Method> resolve_methods(const std::vector<std::string>& names, Sigma sigma) {
  std::vector<Method> out;
  auto add = [&](Method m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  if (names.empty()) {
    if (sigma.is_full()) {
      for (Method m : {Method::kOcc1, Method::kShap, Method::kWeightedShap, Method::kTaylorPoda,
                       Method::kLime}) {
        add(m);
      }
    } else {
      for (Method m : {Method::kOcc1, Method::kTaylorPodaCapped, Method::kLime}) add(m);
    }
    return out;
  }
  for (const auto& name : names) {
    const auto m = parse_method(lower(name));
    if (!m) {
      throw ConfigError("unknown method '" + name +
                        "' (expected occ1, shap, weightedshap, taylorpoda, taylorpoda-c, lime)");
    }
    if (sigma.is_full()) {
      if (*m == Method::kTaylorPodaCapped) {
        throw ConfigError("taylorpoda-c needs an integer --sigma");
      }
      add(*m);
      continue;
    }
    if (*m == Method::kShap || *m == Method::kWeightedShap) {
      throw ConfigError(method_name(*m) + " needs every coalition; use --sigma FULL");
    }
    add(*m == Method::kTaylorPoda ? Method::kTaylorPodaCapped : *m);
  }
  return out;
}

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case ErrorCode::kOracle:
    case ErrorCode::kNonFiniteOutput:
      return kExitOracle;
    case ErrorCode::kEnumerationGuard:
      return kExitEnumeration;
    case ErrorCode::kSingularFit:
      return kExitFailure;
    default:
      return kExitConfig;
  }
}

namespace {

// Inputs shared by every sample of a run.
struct Context {
  const RunConfig& config;
  ModelSpec model;
  Dataset data;
  BackgroundSet background;
  Sigma sigma;
  int d = 0;
  std::vector<Method> methods;
};

Dataset load_data(const RunConfig& config, const std::string& path, bool with_label) {
  if (path.empty()) throw ConfigError("--data is required for " + config.command);
  Dataset data = read_csv(path);
  if (with_label && !config.label_col.empty()) {
    const auto& names = data.feature_names;
    if (std::find(names.begin(), names.end(), config.label_col) != names.end()) {
      data = read_csv(path, config.label_col);
    } else if (path == config.data_path) {
      throw ConfigError("label column '" + config.label_col + "' not found in " + path);
    }
  }
  return data;
}

BackgroundSet load_background(const RunConfig& config, const Dataset& data) {
  const bool separate = !config.background_path.empty();
  const Dataset source = separate ? load_data(config, config.background_path, true) : data;
  if (source.size() == 0) throw ConfigError("background has no rows");
  std::size_t b = std::min(kDefaultBackgroundSize, source.size());
  if (config.background_size) {
    if (*config.background_size > source.size()) {
      throw ConfigError("--background-size " + std::to_string(*config.background_size) +
                        " exceeds the " + std::to_string(source.size()) +
                        " available background rows");
    }
    b = *config.background_size == 0 ? source.size() : *config.background_size;
  }
  BackgroundSet bg = sample_background(source, b, config.seed);
  bg.source = (separate ? config.background_path : config.data_path) + " (" +
              std::to_string(bg.size()) + " of " + std::to_string(source.size()) + " rows)";
  return bg;
}

Context load_context(const RunConfig& config) {
  if (config.model_path.empty()) throw ConfigError("--model is required for " + config.command);
  Context ctx{config, load_model(config.model_path), {}, {}, parse_sigma(config.sigma), 0, {}};
  ctx.d = static_cast<int>(ctx.model.input_dim());
  ctx.data = load_data(config, config.data_path, true);
  if (ctx.data.dimension() != ctx.model.input_dim()) {
    throw ConfigError("data has " + std::to_string(ctx.data.dimension()) +
                      " feature columns, model expects " +
                      std::to_string(ctx.model.input_dim()));
  }
  ctx.background = load_background(config, ctx.data);
  if (ctx.background.dimension() != ctx.model.input_dim()) {
    throw ConfigError("background has " + std::to_string(ctx.background.dimension()) +
                      " feature columns, model expects " +
                      std::to_string(ctx.model.input_dim()));
  }
  if (!ctx.sigma.is_full() && ctx.sigma.value() > ctx.d) {
    throw ConfigError("--sigma " + config.sigma + " exceeds d=" + std::to_string(ctx.d));
  }
  ctx.methods = resolve_methods(config.methods, ctx.sigma);
  return ctx;
}

std::size_t worker_count(const RunConfig& config) {
  if (config.workers > 0) return config.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

CandidateOptions candidate_options(const RunConfig& config, std::uint64_t seed) {
  if (config.n_candidates < 1) throw ConfigError("--candidates must be at least 1");
  CandidateOptions opts;
  opts.n_candidates = config.n_candidates;
  opts.include_uniform = config.include_uniform;
  opts.dirichlet.alpha = {config.alpha};
  opts.dirichlet.seed = seed;
  return opts;
}

struct SampleOutcome {
  std::size_t sample_id = 0;
  FeatureVector x;
  double base_value = 0.0;
  double full_value = 0.0;
  std::vector<Attribution> attributions;
  std::vector<RecoveryCurve> curves;
  std::vector<ForcePlotData> force_plots;
};

SampleOutcome run_sample(const Context& ctx, std::size_t row, bool details) {
  const RunConfig& config = ctx.config;
  const std::uint64_t seed = config.seed ^ static_cast<std::uint64_t>(row);
  SampleOutcome out;
  out.sample_id = row;
  out.x = ctx.data.instance(row);

  const auto table = build_table(ctx.model, out.x, ctx.background, ctx.sigma);
  out.base_value = table.empty_value();
  out.full_value = table.full_value();
  const MaskedValueCache cache(table, ctx.model, ctx.background);
  const CoalitionLookup lookup = cache.lookup();
  const bool capped = !ctx.sigma.is_full();

  for (Method method : ctx.methods) {
    Attribution attr;
    switch (method) {
      case Method::kOcc1:
        attr = occ1(table);
        break;
      case Method::kShap:
        attr = shap_exact(table);
        break;
      case Method::kWeightedShap:
        attr = weighted_shap(table, beta_families(ctx.d));
        break;
      case Method::kTaylorPoda: {
        const auto sel =
            optimize_xi(table, generate_candidates(ctx.d, Sigma::full(),
                                                   candidate_options(config, seed)));
        attr = sel.attribution;
        attr.metadata["seed"] = seed;
        if (details) attr.metadata["xi"] = sel.xi.to_json();
        break;
      }
      case Method::kTaylorPodaCapped: {
        const int sigma = ctx.sigma.value();
        const auto sel = optimize_xi(
            table, generate_candidates(ctx.d, ctx.sigma, candidate_options(config, seed)),
            sigma, lookup);
        attr = sel.attribution;
        attr.metadata["seed"] = seed;
        if (details) attr.metadata["xi"] = sel.xi.to_json();
        if (config.report_gap) {
          // Shares above the cap are never chosen; take them uniform.
          XiAllocation xi = sel.xi;
          const XiAllocation uniform = XiAllocation::uniform(ctx.d, ctx.d);
          for (const auto& [s, w] : uniform.entries()) {
            if (xi.find(s) == nullptr) xi.set(s, w);
          }
          const auto full = build_table(ctx.model, out.x, ctx.background, Sigma::full());
          attr.metadata["capped_gap"] = capped_gap(full, xi, sigma);
          attr.metadata["capped_gap_completion"] = "uniform";
        }
        break;
      }
      case Method::kLime: {
        LimeConfig lc;
        lc.n_samples = config.lime_samples;
        lc.seed = seed;
        attr = lime(ctx.model, out.x, ctx.background, lc);
        break;
      }
    }
    if (capped) {
      score_attribution(attr, table, lookup);
      out.curves.push_back(recovery_curve(attr.scores, table.full_value(), lookup));
    } else {
      score_attribution(attr, table);
      out.curves.push_back(recovery_curve(attr.scores, table));
    }
    if (details) out.force_plots.push_back(make_force_plot(attr, table, ctx.data.feature_names));
    out.attributions.push_back(std::move(attr));
  }
  return out;
}

nlohmann::json report_header(const RunConfig& config) {
  return {{"engine", {{"name", "poda"}, {"version", PODA_VERSION}}},
          {"command", config.command},
          {"config", config.to_json()},
          {"masking_estimator", kMaskingEstimator},
          {"seed", config.seed}};
}

nlohmann::json context_json(const Context& ctx) {
  std::vector<std::string> methods;
  for (Method m : ctx.methods) methods.push_back(method_name(m));
  return {{"model", {{"kind", ctx.model.kind_name()}, {"input_dim", ctx.model.input_dim()}}},
          {"features", ctx.data.feature_names},
          {"background", {{"source", ctx.background.source}, {"rows", ctx.background.size()}}},
          {"sigma", ctx.sigma.to_string()},
          {"methods", methods}};
}

std::vector<std::size_t> selected_rows(const RunConfig& config, const Dataset& data) {
  std::vector<std::size_t> rows = config.rows;
  if (rows.empty()) {
    const std::size_t n =
        config.max_samples > 0 ? std::min(config.max_samples, data.size()) : data.size();
    for (std::size_t r = 0; r < n; ++r) rows.push_back(r);
  }
  for (std::size_t r : rows) {
    if (r >= data.size()) {
      throw ConfigError("row " + std::to_string(r) + " out of range (data has " +
                        std::to_string(data.size()) + " rows)");
    }
  }
  return rows;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

nlohmann::json run_explain(const RunConfig& config) {
  const Context ctx = load_context(config);
  const auto rows = selected_rows(config, ctx.data);
  const auto outcomes = parallel_map<SampleOutcome>(
      rows.size(), worker_count(config),
      [&](std::size_t k) { return run_sample(ctx, rows[k], true); });

  nlohmann::json report = report_header(config);
  report.update(context_json(ctx));
  auto& instances = report["instances"] = nlohmann::json::array();
  for (const auto& o : outcomes) {
    nlohmann::json inst{{"sample_id", o.sample_id},
                        {"values", o.x.values},
                        {"base_value", o.base_value},
                        {"full_value", o.full_value}};
    auto& attrs = inst["attributions"] = nlohmann::json::array();
    for (const auto& a : o.attributions) attrs.push_back(a.to_json());
    auto& plots = inst["force_plots"] = nlohmann::json::array();
    for (const auto& p : o.force_plots) plots.push_back(p.to_json());
    instances.push_back(std::move(inst));
  }
  if (!config.svg.empty() && !outcomes.empty()) {
    const auto& first = outcomes.front();
    write_text(config.svg,
               force_plot_svg(first.force_plots,
                              "sample " + std::to_string(first.sample_id) + ", f(x) = " +
                                  std::to_string(first.full_value)));
  }
  return report;
}

std::set<std::string> parse_metrics(const RunConfig& config) {
  std::set<std::string> out;
  if (config.metrics.empty()) {
    out = {"aup", "discrepancy", "inclusion-mse"};
    if (!config.label_col.empty()) out.insert("inclusion-auc");
    return out;
  }
  std::stringstream ss(config.metrics);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = lower(item);
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    if (std::find(std::begin(kAllMetrics), std::end(kAllMetrics), item) == std::end(kAllMetrics)) {
      throw ConfigError("unknown metric '" + item +
                        "' (expected aup, discrepancy, inclusion-mse, inclusion-auc)");
    }
    out.insert(item);
  }
  return out;
}

nlohmann::json run_evaluate(const RunConfig& config) {
  const auto metrics = parse_metrics(config);
  const Context ctx = load_context(config);
  if (metrics.count("inclusion-auc") && !ctx.data.labels) {
    throw ConfigError("inclusion-auc needs --label-col");
  }
  const auto rows = selected_rows(config, ctx.data);
  if (rows.size() < 2) throw InsufficientSamples("evaluate needs at least 2 samples");

  const auto outcomes = parallel_map<SampleOutcome>(
      rows.size(), worker_count(config),
      [&](std::size_t k) { return run_sample(ctx, rows[k], false); });

  std::vector<double> labels;
  if (ctx.data.labels) {
    for (std::size_t r : rows) labels.push_back((*ctx.data.labels)[r]);
  }

  MetricReport report;
  for (const auto& o : outcomes) {
    for (const auto& a : o.attributions) {
      report.per_sample.push_back({o.sample_id, method_name(a.method), a.aup, a.discrepancy});
    }
  }
  for (std::size_t k = 0; k < ctx.methods.size(); ++k) {
    MethodSummary summary;
    summary.method = method_name(ctx.methods[k]);
    std::vector<double> aups, disc, abs_disc, mse;
    std::vector<RecoveryCurve> curves;
    for (const auto& o : outcomes) {
      const auto& a = o.attributions[k];
      aups.push_back(a.aup);
      disc.push_back(a.discrepancy);
      abs_disc.push_back(std::abs(a.discrepancy));
      curves.push_back(o.curves[k]);
      mse.push_back(sample_inclusion_mse(o.curves[k]));
    }
    if (metrics.count("aup")) summary.aggregates["aup"] = aggregate(aups);
    if (metrics.count("discrepancy")) {
      summary.aggregates["discrepancy"] = aggregate(disc);
      summary.aggregates["abs_discrepancy"] = aggregate(abs_disc);
    }
    if (metrics.count("inclusion-mse")) {
      summary.aggregates["inclusion_mse"] = aggregate(mse);
      summary.inclusion_curves["inclusion_mse"] = inclusion_mse_curve(curves);
    }
    if (metrics.count("inclusion-auc")) {
      auto curve = inclusion_auc_curve(curves, labels);
      // One feature leaves a single point; report it with a zero-width interval.
      summary.aggregates["inclusion_auc"] =
          curve.size() >= 2 ? aggregate(curve) : Interval{curve[0], curve[0], curve[0]};
      summary.inclusion_curves["inclusion_auc"] = std::move(curve);
    }
    report.methods.push_back(std::move(summary));
  }

  nlohmann::json out = report_header(config);
  out.update(context_json(ctx));
  out["samples"] = rows.size();
  out["metric_definitions"] = {
      {"aup", "sum over m=1..d of |f(x) - f_{I(m)}(x)|, I(m) the top-m features by |a_i|"},
      {"discrepancy", "f_empty(x) + sum_i a_i - f(x), signed; abs_discrepancy is its magnitude"},
      {"inclusion_mse",
       "(1/d) sum over m of the mean over samples of (f(x) - f_{I(m)}(x))^2; interval over "
       "per-sample values"},
      {"inclusion_auc",
       "mean over m of the Mann-Whitney ROC-AUC of f_{I(m)}(x) against labels; interval over "
       "per-m values"},
      {"interval", "mean +/- 1.96 s / sqrt(n)"}};
  const auto body = report.to_json();
  out["per_sample"] = body["per_sample"];
  out["methods"] = body["methods"];
  for (std::size_t k = 0; k < report.methods.size(); ++k) {
    for (const auto& [name, interval] : report.methods[k].aggregates) {
      out["methods"][k]["aggregates"][name]["formatted"] = format_interval(interval);
    }
  }
  if (!config.per_sample_csv.empty()) write_text(config.per_sample_csv, report.per_sample_csv());
  return out;
}

nlohmann::json run_diagnose(const RunConfig& config) {
  DiagnoseOptions opts;
  const Sigma sigma = parse_sigma(config.sigma);
  if (!config.methods.empty()) {
    opts.methods.clear();
    for (const auto& name : config.methods) {
      const auto m = parse_method(lower(name));
      if (!m) throw ConfigError("unknown method '" + name + "'");
      if (std::find(opts.methods.begin(), opts.methods.end(), *m) == opts.methods.end()) {
        opts.methods.push_back(*m);
      }
    }
  }
  if (std::find(opts.methods.begin(), opts.methods.end(), Method::kTaylorPodaCapped) !=
      opts.methods.end()) {
    if (sigma.is_full()) throw ConfigError("taylorpoda-c needs an integer --sigma");
    opts.sigma = sigma.value();
  }
  opts.candidates = candidate_options(config, config.seed);

  std::vector<DiagnoseCase> cases;
  nlohmann::json source;
  if (config.model_path.empty()) {
    cases = polynomial_battery(config.cases, config.seed);
    source = {{"kind", "random polynomial battery"}, {"cases", config.cases}};
  } else {
    const ModelSpec model = load_model(config.model_path);
    if (model.polynomial() == nullptr) {
      throw NotPolynomial("diagnose needs a polynomial model, got " + model.kind_name());
    }
    const Dataset data = load_data(config, config.data_path, true);
    const Dataset bg_data =
        config.background_path.empty() ? data : load_data(config, config.background_path, true);
    const auto bg = make_background(bg_data.features, config.background_path);
    RowMatrix instances;
    for (std::size_t r : selected_rows(config, data)) instances.append_row(data.features.row(r));
    cases = model_cases(model, instances, bg);
    source = {{"kind", "model"}, {"model", config.model_path}, {"cases", cases.size()}};
  }
  const auto matrix = diagnose(cases, opts);
  nlohmann::json out = report_header(config);
  out["source"] = source;
  out["postulates"] = matrix.to_json();
  out["text"] = matrix.to_text();
  return out;
}

nlohmann::json run_dump_table(const RunConfig& config) {
  const Context ctx = load_context(config);
  const auto rows = selected_rows(config, ctx.data);
  const std::size_t row = config.rows.empty() ? 0 : rows.front();
  const auto table = build_table(ctx.model, ctx.data.instance(row), ctx.background, ctx.sigma);
  nlohmann::json out = report_header(config);
  out.update(context_json(ctx));
  out.erase("methods");
  out["sample_id"] = row;
  out["table"] = dump_table(table);
  if (config.dividends) out["dividends"] = dump_dividends(harsanyi_all(table));
  return out;
}

}  // namespace

nlohmann::json run_command(const RunConfig& config) {
  if (config.command == "explain") return run_explain(config);
  if (config.command == "evaluate") return run_evaluate(config);
  if (config.command == "diagnose") return run_diagnose(config);
  if (config.command == "dump-table") return run_dump_table(config);
  throw ConfigError("unknown command '" + config.command + "'");
}

namespace {

void add_shared_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--model", c.model_path, "Model file (JSON)");
  sub->add_option("--data", c.data_path, "Instances to explain (CSV with header)");
  sub->add_option("--background", c.background_path,
                  "Background rows (CSV); defaults to --data");
  sub->add_option("--method", c.methods,
                  "occ1|shap|weightedshap|taylorpoda|taylorpoda-c|lime (repeatable)")
      ->delimiter(',');
  sub->add_option("--sigma", c.sigma, "Coalition cap: FULL or an integer")->capture_default_str();
  sub->add_option("--candidates", c.n_candidates, "Random-search candidates for xi")
      ->capture_default_str();
  sub->add_option("--include-uniform", c.include_uniform,
                  "Make candidate 0 the uniform allocation (true|false)")
      ->capture_default_str();
  sub->add_option("--alpha", c.alpha, "Dirichlet concentration")->capture_default_str();
  sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  sub->add_option("--background-size", c.background_size,
                  "Background rows to sample (0 = all; default min(32, rows))");
  sub->add_option("--label-col", c.label_col, "Label column name in --data");
  sub->add_option("--metrics", c.metrics, "aup,discrepancy,inclusion-mse,inclusion-auc");
  sub->add_option("--output", c.output, "Report path (default stdout)");
  sub->add_option("--workers", c.workers, "Worker threads (default: hardware)");
  sub->add_option("--rows", c.rows, "Row indices of --data to use")->delimiter(',');
  sub->add_option("--max-samples", c.max_samples, "Use the first N rows (0 = all)");
  sub->add_option("--lime-samples", c.lime_samples, "LIME perturbation count")
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"TaylorPODA local attribution engine", "poda"};
  app.set_version_flag("--version", PODA_VERSION);
  app.require_subcommand(1);

  auto* explain = app.add_subcommand("explain", "Attribute each selected instance");
  auto* evaluate = app.add_subcommand("evaluate", "Dataset metrics with 95% intervals");
  auto* diag = app.add_subcommand("diagnose", "Postulate matrix on polynomial models");
  auto* dump = app.add_subcommand("dump-table", "Masked-output table of one row");
  for (auto* sub : {explain, evaluate, diag, dump}) add_shared_options(sub, config);
  explain->add_option("--svg", config.svg, "Write a force plot of the first instance");
  explain->add_flag("--report-gap", config.report_gap,
                    "With --sigma k, also report the gap to the full attribution");
  evaluate->add_option("--per-sample-csv", config.per_sample_csv, "Per-sample CSV export");
  diag->add_option("--cases", config.cases, "Battery size when --model is omitted")
      ->capture_default_str();
  diag->add_option("--format", config.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  dump->add_flag("--dividends", config.dividends, "Include Harsanyi dividends");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  for (auto* sub : app.get_subcommands()) config.command = sub->get_name();

  try {
    const nlohmann::json report = run_command(config);
    std::string text;
    if (config.command == "diagnose" && config.format == "text") {
      text = report["text"].get<std::string>();
    } else {
      text = report.dump(2) + "\n";
    }
    if (config.output.empty()) {
      out << text;
    } else {
      write_text(config.output, text);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "poda: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "poda: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace poda::cli
