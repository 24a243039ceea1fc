#include "stablab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "stablab/error.hpp"
#include "stablab/experiments.hpp"
#include "stablab/format.hpp"
#include "stablab/spec_parse.hpp"

namespace stablab::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string format = "csv";
  std::string output;
};

void add_common(CLI::App* app, Common& common) {
  app->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--output", common.output, "Write the report to this file");
}

// Writes `text` to the --output file or `out`.
void emit(const Common& common, const std::string& text, std::ostream& out) {
  if (common.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) throw ValidationError("output: cannot open '" + common.output + "' for writing");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed) {
  if (!seed) throw ValidationError("seed: --seed is required for stochastic commands");
  return *seed;
}

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  bool first = true;
  for (double v : values) {
    if (!first) line += ',';
    line += format_number(v);
    first = false;
  }
  return line + "\n";
}

ModelDocument resolve_model(const std::string& path, const std::string& inline_json) {
  if (!path.empty() && !inline_json.empty()) {
    throw ValidationError("model: give either --model or --model-json, not both");
  }
  if (!path.empty()) return load_model(path);
  if (inline_json.empty()) throw ValidationError("model: --model or --model-json is required");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(inline_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("model: --model-json is not valid JSON: ") + e.what());
  }
  return model_from_json(doc);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for symmetric stable limits of weighted sums", "stablab"};
  app.require_subcommand(1);

  // cf
  Common cf_common;
  std::string cf_member;
  std::optional<double> cf_alpha;
  std::optional<double> cf_c;
  std::string cf_grid = "-3:3:41";
  auto* cf = app.add_subcommand("cf", "Tabulate a characteristic function over a t grid");
  cf->add_option("--member", cf_member, "Member spec; defaults to stable:alpha=..,c=..");
  cf->add_option("--alpha", cf_alpha, "Stable exponent (when --member is absent)");
  cf->add_option("--c", cf_c, "Scale coefficient (when --member is absent)");
  cf->add_option("--t-grid", cf_grid, "start:stop:count");
  add_common(cf, cf_common);

  // cdf
  Common cdf_common;
  double cdf_alpha = 0.0;
  double cdf_c = 0.0;
  double cdf_tol = 1e-8;
  std::string cdf_grid = "-10:10:201";
  auto* cdf = app.add_subcommand("cdf", "Tabulate the stable distribution function");
  cdf->add_option("--alpha", cdf_alpha)->required();
  cdf->add_option("--c", cdf_c)->required();
  cdf->add_option("--x-grid", cdf_grid, "start:stop:count");
  cdf->add_option("--abs-tol", cdf_tol, "Quadrature absolute tolerance");
  add_common(cdf, cdf_common);

  // sample
  Common sample_common;
  std::string sample_member;
  std::size_t sample_count = 1000;
  std::optional<std::uint64_t> sample_seed;
  auto* sample = app.add_subcommand("sample", "Draw samples from a member");
  sample->add_option("--member", sample_member)->required();
  sample->add_option("--count", sample_count);
  sample->add_option("--seed", sample_seed);
  add_common(sample, sample_common);

  // rho
  Common rho_common;
  std::string rho_m1;
  std::string rho_m2;
  std::optional<int> rho_trunc;
  int rho_grid = 64;
  auto* rho_cmd = app.add_subcommand("rho", "Distance between two members of S(alpha, c)");
  rho_cmd->add_option("--m1", rho_m1)->required();
  rho_cmd->add_option("--m2", rho_m2)->required();
  rho_cmd->add_option("--trunc-m", rho_trunc, "Dyadic bands retained");
  rho_cmd->add_option("--grid-per-band", rho_grid);
  add_common(rho_cmd, rho_common);

  // lemma1
  Common l1_common;
  std::string l1_m1;
  std::string l1_m2;
  std::string l1_weights = "constant";
  std::size_t l1_n = 64;
  double l1_t = 1.0;
  bool l1_refined_only = false;
  std::optional<int> l1_trunc;
  int l1_grid = 64;
  auto* l1 = app.add_subcommand("lemma1", "Check the characteristic-function deviation bound");
  l1->add_option("--m1", l1_m1)->required();
  l1->add_option("--m2", l1_m2)->required();
  l1->add_option("--weights", l1_weights);
  l1->add_option("--n", l1_n);
  l1->add_option("--t", l1_t);
  l1->add_flag("--refined-only", l1_refined_only, "Skip the rho bound");
  l1->add_option("--trunc-m", l1_trunc);
  l1->add_option("--grid-per-band", l1_grid);
  add_common(l1, l1_common);

  // uan
  Common uan_common;
  std::string uan_weights;
  double uan_alpha = 1.0;
  std::string uan_nlist = "100,10000,1000000";
  auto* uan = app.add_subcommand("uan", "delta_N table and uan verdict for a weight scheme");
  uan->add_option("--weights", uan_weights)->required();
  uan->add_option("--alpha", uan_alpha)->required();
  uan->add_option("--n-list", uan_nlist);
  add_common(uan, uan_common);

  // converge
  Common cv_common;
  std::string cv_model;
  std::string cv_model_json;
  std::string cv_weights = "constant";
  std::string cv_nlist = "256,1024,4096";
  std::size_t cv_reps = 10000;
  std::string cv_grid = "-3:3:41";
  std::optional<std::uint64_t> cv_seed;
  unsigned cv_shards = 1;
  bool cv_timing = false;
  auto* cv = app.add_subcommand("converge", "Monte Carlo convergence to the stable limit");
  cv->add_option("--model", cv_model, "Model file (JSON)");
  cv->add_option("--model-json", cv_model_json, "Inline model document");
  cv->add_option("--weights", cv_weights);
  cv->add_option("--n-list", cv_nlist);
  cv->add_option("--reps", cv_reps);
  cv->add_option("--t-grid", cv_grid);
  cv->add_option("--seed", cv_seed);
  cv->add_option("--shards", cv_shards);
  cv->add_flag("--timing", cv_timing, "Record wall-clock runtime_ms (breaks byte-identical replay)");
  add_common(cv, cv_common);

  // clt
  Common clt_common;
  std::string clt_model;
  std::string clt_model_json;
  std::size_t clt_n = 2048;
  std::size_t clt_reps = 20000;
  std::optional<std::uint64_t> clt_seed;
  unsigned clt_shards = 1;
  bool clt_timing = false;
  auto* clt = app.add_subcommand("clt", "Mixed-normal limit for finite-variance models");
  clt->add_option("--model", clt_model);
  clt->add_option("--model-json", clt_model_json);
  clt->add_option("--n", clt_n);
  clt->add_option("--reps", clt_reps);
  clt->add_option("--seed", clt_seed);
  clt->add_option("--shards", clt_shards);
  clt->add_flag("--timing", clt_timing);
  add_common(clt, clt_common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    if (*cf) {
      SacMember member = [&] {
        if (!cf_member.empty()) return parse_member(cf_member);
        if (!cf_alpha || !cf_c) {
          throw ValidationError("member: give --member or both --alpha and --c");
        }
        return SacMember::pure_stable(StableParams(*cf_alpha, *cf_c));
      }();
      const auto grid = parse_grid(cf_grid);
      const auto quad = QuadratureSpec::for_params(member.params());
      std::vector<double> values;
      for (double t : grid) values.push_back(member.cf(t, quad));
      if (cf_common.format == "csv") {
        std::string text = "t,cf\n";
        for (std::size_t i = 0; i < grid.size(); ++i) text += csv_row({grid[i], values[i]});
        emit(cf_common, text, out);
      } else {
        Json j;
        j["config"] = {{"command", "cf"}, {"member", member.describe()}, {"t_grid", cf_grid}};
        j["t"] = grid;
        j["cf"] = values;
        emit(cf_common, dump(j), out);
      }
    } else if (*cdf) {
      const StableParams params(cdf_alpha, cdf_c);
      const auto quad = QuadratureSpec::for_params(params, cdf_tol);
      const auto grid = parse_grid(cdf_grid);
      std::vector<double> values;
      for (double x : grid) values.push_back(stable_cdf(params, x, quad));
      if (cdf_common.format == "csv") {
        std::string text = "x,cdf\n";
        for (std::size_t i = 0; i < grid.size(); ++i) text += csv_row({grid[i], values[i]});
        emit(cdf_common, text, out);
      } else {
        Json j;
        j["config"] = {{"command", "cdf"}, {"alpha", cdf_alpha}, {"c", cdf_c},
                       {"x_grid", cdf_grid}, {"abs_tol", cdf_tol}};
        j["x"] = grid;
        j["cdf"] = values;
        emit(cdf_common, dump(j), out);
      }
    } else if (*sample) {
      const std::uint64_t seed = require_seed(sample_seed);
      const SacMember member = parse_member(sample_member);
      if (sample_count < 1) throw ValidationError("count: must be at least 1");
      RandomStream rng(seed);
      std::vector<double> draws;
      draws.reserve(sample_count);
      for (std::size_t i = 0; i < sample_count; ++i) draws.push_back(member.sample(rng));
      if (sample_common.format == "csv") {
        std::string text = "sample\n";
        for (double v : draws) text += format_number(v) + "\n";
        emit(sample_common, text, out);
      } else {
        Json j;
        j["config"] = {{"command", "sample"}, {"member", member.describe()},
                       {"count", sample_count}, {"seed", seed}};
        j["seed"] = seed;
        j["samples"] = draws;
        emit(sample_common, dump(j), out);
      }
    } else if (*rho_cmd) {
      const SacMember m1 = parse_member(rho_m1);
      const SacMember m2 = parse_member(rho_m2);
      RhoSpec spec = RhoSpec::for_params(m1.params());
      if (rho_trunc) spec.trunc_M = *rho_trunc;
      spec.grid_per_band = rho_grid;
      const RhoResult r = rho(m1, m2, spec, QuadratureSpec::for_params(m1.params()));
      if (rho_common.format == "csv") {
        emit(rho_common, "value,trunc_bound\n" + csv_row({r.value, r.trunc_bound}), out);
      } else {
        Json j;
        j["config"] = {{"command", "rho"}, {"m1", m1.describe()}, {"m2", m2.describe()},
                       {"trunc_m", spec.trunc_M}, {"grid_per_band", spec.grid_per_band}};
        j["value"] = r.value;
        j["trunc_bound"] = r.trunc_bound;
        emit(rho_common, dump(j), out);
      }
    } else if (*l1) {
      const SacMember m1 = parse_member(l1_m1);
      const SacMember m2 = parse_member(l1_m2);
      const WeightScheme scheme = parse_weights(l1_weights);
      const WeightPrefix prefix = weights_prefix(scheme, l1_n, m1.params().alpha());
      RhoSpec spec = RhoSpec::for_params(m1.params());
      if (l1_trunc) spec.trunc_M = *l1_trunc;
      spec.grid_per_band = l1_grid;
      const Lemma1Result r = lemma1_check(m1, m2, prefix, l1_t, spec,
                                          QuadratureSpec::for_params(m1.params()),
                                          !l1_refined_only);
      if (l1_common.format == "csv") {
        emit(l1_common,
             "lhs,rhs_rho,rhs_refined,pass\n" + format_number(r.lhs) + "," +
                 (r.rho_compared ? format_number(r.rhs_rho) : std::string("")) + "," +
                 format_number(r.rhs_refined) + "," + (r.pass ? "PASS" : "FAIL") + "\n",
             out);
      } else {
        Json j;
        j["config"] = {{"command", "lemma1"}, {"m1", m1.describe()}, {"m2", m2.describe()},
                       {"weights", scheme.describe()}, {"n", l1_n}, {"t", l1_t},
                       {"refined_only", l1_refined_only}, {"trunc_m", spec.trunc_M},
                       {"grid_per_band", spec.grid_per_band}};
        j["delta_N"] = prefix.delta;
        j["lhs"] = r.lhs;
        j["rhs_rho"] = r.rho_compared ? Json(r.rhs_rho) : Json(nullptr);
        j["rhs_refined"] = r.rhs_refined;
        j["tolerance"] = r.tolerance;
        j["pass"] = r.pass;
        emit(l1_common, dump(j), out);
      }
    } else if (*uan) {
      const WeightScheme scheme = parse_weights(uan_weights);
      const UanReport r = uan_check(scheme, uan_alpha, parse_count_list(uan_nlist));
      const std::string verdict = r.pass ? "PASS" : "FAIL";
      if (uan_common.format == "csv") {
        std::string text = "N,delta,verdict\n";
        for (std::size_t i = 0; i < r.N.size(); ++i) {
          text += std::to_string(r.N[i]) + "," + format_number(r.delta[i]) + "," + verdict + "\n";
        }
        emit(uan_common, text, out);
      } else {
        Json j;
        j["config"] = {{"command", "uan"}, {"weights", scheme.describe()},
                       {"alpha", uan_alpha}, {"n_list", r.N}};
        j["N"] = r.N;
        j["delta"] = r.delta;
        j["verdict"] = verdict;
        j["thresholds"] = {{"absolute", r.absolute_threshold}, {"decay_factor", r.decay_factor}};
        emit(uan_common, dump(j), out);
      }
    } else if (*cv) {
      const std::uint64_t seed = require_seed(cv_seed);
      const ModelDocument doc = resolve_model(cv_model, cv_model_json);
      const WeightScheme scheme = parse_weights(cv_weights);
      const auto n_list = parse_count_list(cv_nlist);
      const auto grid = parse_grid(cv_grid);
      if (cv_reps < 1) throw ValidationError("reps: must be at least 1");
      if (cv_shards < 1) throw ValidationError("shards: must be at least 1");
      auto reports = converge_experiment(doc.model, scheme, n_list, cv_reps, grid, seed, cv_shards);
      if (!cv_timing) {
        for (auto& r : reports) r.runtime_ms = 0;
      }
      if (cv_common.format == "csv") {
        std::string text = "N,t,ecf,target,abs_dev,mc_se\n";
        for (const auto& r : reports) {
          for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
            text += std::to_string(r.N) + "," +
                    csv_row({r.t_grid[i], r.ecf[i], r.target[i], r.abs_dev[i], r.mc_se[i]});
          }
        }
        emit(cv_common, text, out);
      } else {
        Json j;
        j["config"] = {{"command", "converge"}, {"model", doc.source},
                       {"weights", scheme.describe()}, {"n_list", n_list},
                       {"reps", cv_reps}, {"t_grid", cv_grid}, {"seed", seed},
                       {"shards", cv_shards}, {"timing", cv_timing}};
        j["seed"] = seed;
        j["reports"] = Json::array();
        for (const auto& r : reports) {
          Json e;
          e["N"] = r.N;
          e["reps"] = r.reps;
          e["t_grid"] = r.t_grid;
          e["ecf"] = r.ecf;
          e["target"] = r.target;
          e["abs_dev"] = r.abs_dev;
          e["mc_se"] = r.mc_se;
          e["max_abs_dev"] = r.max_abs_dev;
          e["uan_flag"] = r.uan_pass ? "PASS" : "FAIL";
          e["runtime_ms"] = r.runtime_ms;
          j["reports"].push_back(e);
        }
        emit(cv_common, dump(j), out);
      }
    } else if (*clt) {
      const std::uint64_t seed = require_seed(clt_seed);
      const ModelDocument doc = resolve_model(clt_model, clt_model_json);
      if (clt_reps < 1) throw ValidationError("reps: must be at least 1");
      if (clt_shards < 1) throw ValidationError("shards: must be at least 1");
      CltReport r = clt_experiment(doc.model, clt_n, clt_reps, seed, clt_shards);
      if (!clt_timing) r.runtime_ms = 0;
      if (clt_common.format == "csv") {
        emit(clt_common, "N,reps,seed,ks\n" + std::to_string(r.N) + "," + std::to_string(r.reps) +
                             "," + std::to_string(r.seed) + "," + format_number(r.ks) + "\n",
             out);
      } else {
        Json j;
        j["config"] = {{"command", "clt"}, {"model", doc.source}, {"n", clt_n},
                       {"reps", clt_reps}, {"seed", seed}, {"shards", clt_shards},
                       {"timing", clt_timing}};
        j["seed"] = seed;
        j["N"] = r.N;
        j["reps"] = r.reps;
        j["ks"] = r.ks;
        j["limit"] = {{"probs", r.probs}, {"variances", r.variances}};
        j["runtime_ms"] = r.runtime_ms;
        emit(clt_common, dump(j), out);
      }
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
  return kOk;
}

}  // namespace stablab::cli
