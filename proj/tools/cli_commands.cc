// Copyright 2026 The nsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_commands.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsp/confusability_graph.h"
#include "nsp/errors.h"
#include "nsp/exact_oracle.h"
#include "nsp/greedy.h"
#include "nsp/ingest.h"
#include "nsp/json_io.h"
#include "nsp/measures.h"
#include "nsp/pareto.h"
#include "nsp/version.h"

namespace nsp::cli {
namespace {

using nlohmann::json;

struct InputArgs {
  std::string input;
  std::string s_column = "s";
  std::string x_column = "x";
  bool no_header = false;
  std::vector<std::string> missing;
  std::string delimiter = ",";
  bool require_numeric_x = false;
  bool drop_duplicates = false;
  std::string pairs;
  std::string values;
};

struct Loaded {
  JointRange jr;
  DatasetStats stats;
};

struct ModelArgs {
  std::string algorithm = "l0";
  std::optional<double> lambda;
  std::string utility = "u1";
  std::string codeword = "centroid";
};

void add_input_options(CLI::App* cmd, InputArgs& a) {
  auto* input = cmd->add_option("--input", a.input, "CSV file");
  auto* pairs =
      cmd->add_option("--pairs", a.pairs, "inline joint range \"s1:x1,s1:x2,...\"");
  input->excludes(pairs);
  cmd->add_option("--values", a.values,
                  "numeric X values for --pairs, \"x1=0.2,x2=0.1,...\"")
      ->needs(pairs);
  cmd->add_option("--s", a.s_column, "S column, by header name or 0-based index")
      ->capture_default_str();
  cmd->add_option("--x", a.x_column, "X column, by header name or 0-based index")
      ->capture_default_str();
  cmd->add_flag("--no-header", a.no_header, "the CSV has no header row");
  cmd->add_option("--missing", a.missing,
                  "missing-value sentinels (default: -9, empty, ?)");
  cmd->add_option("--delimiter", a.delimiter, "CSV delimiter")
      ->capture_default_str();
  cmd->add_flag("--require-numeric-x", a.require_numeric_x,
                "fail on a non-numeric X cell");
  cmd->add_flag("--drop-duplicates", a.drop_duplicates,
                "count each (s, x) combination once");
}

void add_model_options(CLI::App* cmd, ModelArgs& m, bool with_algorithm) {
  if (with_algorithm) {
    cmd->add_option("--algorithm", m.algorithm, "l0 | istar | l0-zero-istar")
        ->capture_default_str();
  }
  cmd->add_option("--utility", m.utility, "u1 | u2")->capture_default_str();
  cmd->add_option("--codeword", m.codeword, "centroid | representative")
      ->capture_default_str();
}

Loaded load_input(const InputArgs& a) {
  if (!a.pairs.empty()) {
    JointRange jr = parse_inline_pairs(a.pairs, a.values);
    const auto& p = jr.pairs();
    DatasetStats st = stats(jr, {p.begin(), p.end()});
    return Loaded{std::move(jr), st};
  }
  if (a.input.empty()) throw ConfigError("one of --input or --pairs is required");
  if (a.delimiter.size() != 1) {
    throw ConfigError("--delimiter must be a single character");
  }
  IngestOptions opt;
  opt.has_header = !a.no_header;
  if (!a.missing.empty()) opt.missing = a.missing;
  opt.delimiter = a.delimiter[0];
  opt.require_numeric_x = a.require_numeric_x;
  opt.drop_duplicate_records = a.drop_duplicates;
  IngestResult r = load_csv(a.input, parse_column_ref(a.s_column),
                            parse_column_ref(a.x_column), opt);
  return Loaded{std::move(r.joint_range), r.stats};
}

json input_echo(const InputArgs& a) {
  if (!a.pairs.empty()) {
    return json{{"pairs", a.pairs}, {"values", a.values}};
  }
  json j{{"path", a.input},
         {"s", a.s_column},
         {"x", a.x_column},
         {"header", !a.no_header},
         {"delimiter", a.delimiter},
         {"drop_duplicates", a.drop_duplicates}};
  j["missing"] = a.missing.empty() ? IngestOptions{}.missing : a.missing;
  return j;
}

std::string timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest(const std::string& subcommand, const InputArgs& in,
              json config) {
  return json{{"subcommand", subcommand},
              {"input", input_echo(in)},
              {"config", std::move(config)},
              {"version", kVersion},
              {"timestamp", timestamp()}};
}

json document(const std::string& subcommand, const InputArgs& in,
              json config) {
  return json{{"schema", kSchemaVersion},
              {"manifest", manifest(subcommand, in, std::move(config))}};
}

LagrangianConfig lagrangian(const ModelArgs& m) {
  LagrangianConfig cfg;
  cfg.lambda = m.lambda.value_or(0.0);
  cfg.utility = UtilityChoice{parse_utility_kind(m.utility)};
  cfg.policy = parse_codeword_policy(m.codeword);
  return cfg;
}

// Writes to --out when given, otherwise to `out`.
void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    throw ConfigError("cannot write '" + path + "'");
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void cmd_stats(const InputArgs& in, const std::string& out_path,
               std::ostream& out) {
  const Loaded data = load_input(in);
  json doc = document("stats", in, json::object());
  doc["stats"] = to_json(data.stats);
  doc["s_numeric"] = data.jr.s_size() > 0 &&
                     data.jr.s_alphabet()[0].value.has_value();
  doc["x_numeric"] = data.jr.x_numeric();
  emit(out_path, out, dump(doc));
}

void cmd_quantize(const InputArgs& in, const ModelArgs& m,
                  const std::string& apply, const std::string& out_path,
                  std::ostream& out) {
  const Loaded data = load_input(in);
  const JointRange& jr = data.jr;
  json config{{"utility", m.utility}, {"codeword", m.codeword}};

  if (!apply.empty()) {
    std::ifstream file(apply, std::ios::binary);
    if (!file) throw ConfigError("cannot open '" + apply + "'");
    const json given = json::parse(file);
    const Quantization q =
        quantization_from_json(jr, given, parse_codeword_policy(m.codeword));
    config["apply_quantization"] = apply;
    json doc = document("quantize", in, std::move(config));
    doc["quantization"] = quantization_to_json(jr, q);
    doc["measures"] = measures_to_json(jr, q);
    doc["decomposition"] = x_blocks_to_json(
        jr, expand_to_x(finest_decomposition(build_graph(jr, q)), q));
    emit(out_path, out, dump(doc));
    return;
  }

  if (!m.lambda) throw ConfigError("--lambda is required");
  const Algorithm algorithm = parse_algorithm(m.algorithm);
  const LagrangianConfig cfg = lagrangian(m);
  const GreedyResult r = run_greedy(algorithm, jr, cfg);
  config["algorithm"] = m.algorithm;
  config["lambda"] = cfg.lambda;
  json doc = document("quantize", in, std::move(config));
  doc["quantization"] = quantization_to_json(jr, r.final_quantization);
  doc["measures"] = measures_to_json(jr, r.final_quantization);
  doc["lagrangian"] = algorithm == Algorithm::kMinIStar
                          ? lagrangian_istar(jr, r.final_quantization, cfg)
                          : lagrangian_l0(jr, r.final_quantization, cfg);
  doc["termination"] = to_string(r.reason);
  doc["decomposition"] = x_blocks_to_json(jr, r.final_decomposition);
  doc["trace"] = trace_to_json(jr, r.trace);
  emit(out_path, out, dump(doc));
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3 && parts.size() != 4) {
    throw ConfigError("--grid expects \"count,min,max[,geom|linear]\"");
  }
  const auto count = parse_number(parts[0]);
  const auto lo = parse_number(parts[1]);
  const auto hi = parse_number(parts[2]);
  if (!count || !lo || !hi || *count < 1 || *count != static_cast<std::size_t>(*count)) {
    throw ConfigError("--grid has a malformed count, min or max");
  }
  const std::string spacing = parts.size() == 4 ? parts[3] : "geom";
  const auto n = static_cast<std::size_t>(*count);
  if (spacing == "geom") return geometric_grid(n, *lo, *hi, /*with_zero=*/true);
  if (spacing == "linear") return linear_grid(n, *lo, *hi);
  throw ConfigError("--grid spacing must be geom or linear");
}

std::vector<double> parse_lambdas(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto v = parse_number(item);
    if (!v) throw ConfigError("--lambdas entry '" + item + "' is not a number");
    out.push_back(*v);
  }
  return out;
}

struct ParetoArgs {
  std::string grid;
  std::string lambdas;
  std::string format = "csv";
  bool final_only = false;
  std::size_t threads = 0;
};

void cmd_pareto(const InputArgs& in, const ModelArgs& m, const ParetoArgs& p,
                const std::string& out_path, std::ostream& out) {
  if (p.format != "csv" && p.format != "json") {
    throw ConfigError("--format must be csv or json");
  }
  const Loaded data = load_input(in);
  std::vector<double> grid = default_lambda_grid();
  if (!p.grid.empty()) grid = parse_grid(p.grid);
  if (!p.lambdas.empty()) grid = parse_lambdas(p.lambdas);

  SweepOptions opt;
  opt.policy = parse_codeword_policy(m.codeword);
  opt.include_iterates = !p.final_only;
  opt.threads = p.threads;
  opt.dataset_id = in.pairs.empty() ? in.input : "inline";
  const Algorithm algorithm = parse_algorithm(m.algorithm);
  const Frontier f = sweep(data.jr, algorithm, parse_utility_kind(m.utility),
                           grid, opt);

  json config{{"algorithm", m.algorithm},
              {"utility", m.utility},
              {"codeword", m.codeword},
              {"grid", grid},
              {"final_only", p.final_only}};
  json doc = document("pareto", in, std::move(config));
  if (p.format == "json") {
    doc["frontier"] = frontier_to_json(data.jr, f);
    emit(out_path, out, dump(doc));
    return;
  }
  std::ostringstream csv;
  write_frontier_csv(csv, f);
  emit(out_path, out, csv.str());
  if (!out_path.empty()) {
    doc["degenerate"] = f.degenerate;
    emit(out_path + ".manifest.json", out, dump(doc));
  }
}

void cmd_baseline(const InputArgs& in, const ModelArgs& m, std::size_t k,
                  const std::string& out_path, std::ostream& out) {
  const Loaded data = load_input(in);
  const JointRange& jr = data.jr;
  const CodewordPolicy policy = parse_codeword_policy(m.codeword);
  const Quantization q = sweeney_baseline(jr, k, policy);
  json doc = document("baseline", in, json{{"k", k}, {"codeword", m.codeword}});
  doc["quantization"] = quantization_to_json(jr, q);
  doc["measures"] = measures_to_json(jr, q);
  doc["k_anonymous"] = is_k_anonymous(jr, q, k);
  // Coordinates on the L0 / resolution plane used by frontier comparisons.
  const double ref = l0(jr, Quantization::singletons(jr, policy));
  const double leak = l0(jr, q);
  doc["normalized"] = json{
      {"leakage_l0", ref == 0.0 ? leak : leak / ref},
      {"loss_u1", 1.0 - utility(jr, q, UtilityChoice{UtilityKind::kResolution}) /
                            h0(jr.x_size())},
      {"degenerate", ref == 0.0}};
  emit(out_path, out, dump(doc));
}

void cmd_oracle(const InputArgs& in, const ModelArgs& m,
                const std::string& problem_text, std::optional<double> theta,
                const std::string& out_path, std::ostream& out) {
  if (m.lambda.has_value() == theta.has_value()) {
    throw ConfigError("oracle needs exactly one of --lambda or --theta");
  }
  const OracleProblem problem = parse_oracle_problem(problem_text);
  const Loaded data = load_input(in);
  const JointRange& jr = data.jr;
  OracleConfig cfg{lagrangian(m), theta};
  const OracleResult r = oracle_min(jr, problem, cfg);

  json config{{"problem", problem_text},
              {"utility", m.utility},
              {"codeword", m.codeword}};
  if (m.lambda) config["lambda"] = *m.lambda;
  if (theta) config["theta"] = *theta;
  json doc = document("oracle", in, std::move(config));
  doc["value"] = r.value;
  doc["optimum_count"] = r.optimum_count;
  doc["partitions_visited"] = r.partitions_visited;
  doc["quantization"] = quantization_to_json(jr, r.quantization);
  doc["measures"] = measures_to_json(jr, r.quantization);
  emit(out_path, out, dump(doc));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Non-stochastic privacy-utility quantization", "nsp"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  InputArgs in;
  ModelArgs model;
  std::string out_path;
  std::string apply;
  ParetoArgs pareto;
  std::size_t k = 0;
  std::string problem = "l0";
  std::optional<double> theta;

  auto* stats_cmd = app.add_subcommand("stats", "dataset statistics as JSON");
  add_input_options(stats_cmd, in);
  stats_cmd->add_option("--out", out_path, "write to this file");

  auto* quantize_cmd =
      app.add_subcommand("quantize", "run a greedy quantizer and report it");
  add_input_options(quantize_cmd, in);
  add_model_options(quantize_cmd, model, true);
  quantize_cmd->add_option("--lambda", model.lambda, "Lagrange multiplier");
  quantize_cmd->add_option("--apply-quantization", apply,
                           "evaluate a quantization JSON instead of searching");
  quantize_cmd->add_option("--out", out_path, "write to this file");

  auto* pareto_cmd = app.add_subcommand("pareto", "sweep lambda for a frontier");
  add_input_options(pareto_cmd, in);
  add_model_options(pareto_cmd, model, true);
  auto* grid = pareto_cmd->add_option(
      "--grid", pareto.grid, "\"count,min,max[,geom|linear]\"; geom adds 0");
  pareto_cmd->add_option("--lambdas", pareto.lambdas, "explicit \"l1,l2,...\"")
      ->excludes(grid);
  pareto_cmd->add_option("--format", pareto.format, "csv | json")
      ->capture_default_str();
  pareto_cmd->add_flag("--final-only", pareto.final_only,
                       "use only each run's final quantization");
  pareto_cmd->add_option("--threads", pareto.threads, "0 = all cores")
      ->capture_default_str();
  pareto_cmd->add_option("--out", out_path, "write to this file");

  auto* baseline_cmd =
      app.add_subcommand("baseline", "k-anonymity by generalization");
  add_input_options(baseline_cmd, in);
  add_model_options(baseline_cmd, model, false);
  baseline_cmd->add_option("--k", k, "anonymity level")->required();
  baseline_cmd->add_option("--out", out_path, "write to this file");

  auto* oracle_cmd =
      app.add_subcommand("oracle", "exhaustive optimum for |X| <= 12");
  add_input_options(oracle_cmd, in);
  add_model_options(oracle_cmd, model, false);
  oracle_cmd->add_option("--problem", problem, "l0 | istar | l0-zero-istar")
      ->capture_default_str();
  oracle_cmd->add_option("--lambda", model.lambda, "Lagrange multiplier");
  oracle_cmd->add_option("--theta", theta, "utility floor");
  oracle_cmd->add_option("--out", out_path, "write to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*stats_cmd) {
      cmd_stats(in, out_path, out);
    } else if (*quantize_cmd) {
      cmd_quantize(in, model, apply, out_path, out);
    } else if (*pareto_cmd) {
      cmd_pareto(in, model, pareto, out_path, out);
    } else if (*baseline_cmd) {
      cmd_baseline(in, model, k, out_path, out);
    } else if (*oracle_cmd) {
      cmd_oracle(in, model, problem, theta, out_path, out);
    }
  } catch (const IngestError& e) {
    err << "ingestion error (" << to_string(e.kind()) << "): " << e.what()
        << "\n";
    return kExitIngest;
  } catch (const SizeLimitError& e) {
    err << "size limit: " << e.what() << "\n";
    return kExitSizeLimit;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    // ConfigError, and contract or index violations caused by user input.
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "configuration error: bad JSON: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace nsp::cli
