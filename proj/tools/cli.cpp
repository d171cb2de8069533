/*
 * Copyright (C) 2026 The tarrylab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include "json.hpp"
#include <optional>
#include <sstream>
#include <stdexcept>

#include "tarry/errors.hpp"
#include "tarry/exponent.hpp"
#include "tarry/geometry.hpp"
#include "tarry/matanalysis.hpp"
#include "tarry/momentmap.hpp"
#include "tarry/oracles.hpp"
#include "tarry/oscquad.hpp"
#include "tarry/parallel.hpp"
#include "tarry/phasepoly.hpp"
#include "tarry/report.hpp"

namespace tarry::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Raised for bad flag values that CLI11 cannot check by itself.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GlobalOptions {
  std::uint64_t seed = 1;
  long long samples = -1;  // -1: command default
  std::string out = "runs";
  std::string format = "json";
  bool force = false;
  std::string config;
};

struct EvalOptions {
  std::string coeffs;
  std::string family = "tarry";
  double x = 0.5;
  double y = 0.5;
};

struct ScanOptions {
  double threshold = 1e-12;
};

struct SlabOptions {
  std::string system = "tarry";
  std::vector<double> u;
  std::vector<double> h;
  double eta = -1.0;  // -1: system default
};

struct TailOptions {
  std::string family = "tarry";
  int k2 = 12;
  std::vector<double> radii = {1.0, 2.0, 4.0, 8.0};
};

struct FitOptions {
  std::string input;
};

struct OracleOptions {
  std::vector<int> criteria;
  std::uint64_t soft_samples = BatteryOptions{}.soft_probe_samples;
};

struct ReportOptions {
  std::string input;
};

std::uint64_t sample_count(const GlobalOptions& g, std::uint64_t fallback) {
  if (g.samples < 0) return fallback;
  if (g.samples == 0) throw UsageError("--samples must be at least 1");
  return static_cast<std::uint64_t>(g.samples);
}

/// Seed of sub-run `index` of a command, e.g. one tail shell.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  return SampleStream(seed, index).next();
}

json quad_json(const QuadratureConfig& q) {
  json j;
  to_json(j, q);
  return j;
}

bool wants_json(const GlobalOptions& g) {
  return g.format == "json" || g.format == "both";
}

bool wants_csv(const GlobalOptions& g) {
  return g.format == "csv" || g.format == "both";
}

/// Files written for one run, plus its outcome.
struct RunOutput {
  json payload;
  std::string csv;
  std::string plot;  // optional two-column plot data
  std::vector<std::string> warnings;
  int exit_code = kExitOk;
};

/// Persists a run under the global output directory. Returns false when an
/// identical run already exists and --force is not set.
std::optional<fs::path> reserve(const GlobalOptions& g,
                                const std::string& command, const json& config,
                                std::ostream& out) {
  fs::create_directories(g.out);
  const std::string hash = config_hash(config);
  auto base = run_base_path(g.out, command, hash, g.force);
  if (!base) {
    out << "run " << command << "-" << hash << " already exists in " << g.out
        << "; use --force to run again\n";
  }
  return base;
}

void persist(const GlobalOptions& g, const fs::path& base,
             const std::string& command, const json& config,
             const std::string& started, const RunOutput& res,
             std::ostream& out) {
  RunRecord rec;
  rec.command = command;
  rec.config = config;
  rec.config_hash = config_hash(config);
  rec.started_at = started;
  rec.finished_at = utc_timestamp();
  rec.outputs = res.payload;
  rec.warnings = res.warnings;
  json j;
  to_json(j, rec);
  const fs::path record = base.string() + ".json";
  write_text(record, j.dump(2) + "\n");
  out << "record: " << record.string() << "\n";
  if (wants_json(g)) {
    const fs::path p = base.string() + ".report.json";
    write_text(p, res.payload.dump(2) + "\n");
    out << "report: " << p.string() << "\n";
  }
  if (wants_csv(g) && !res.csv.empty()) {
    const fs::path p = base.string() + ".csv";
    write_text(p, res.csv);
    out << "report: " << p.string() << "\n";
  }
  if (wants_csv(g) && !res.plot.empty()) {
    const fs::path p = base.string() + ".plot.dat";
    write_text(p, res.plot);
    out << "plot data: " << p.string() << "\n";
  }
}

/// Common driver: builds the config, skips existing runs, computes, persists
/// and reports warnings.
template <typename Compute>
int run_persisted(const GlobalOptions& g, const std::string& command,
                  json config, Compute compute, std::ostream& out,
                  std::ostream& err) {
  config["command"] = command;
  config["seed"] = g.seed;
  config["version"] = kVersion;
  const auto base = reserve(g, command, config, out);
  if (!base) return kExitOk;
  const std::string started = utc_timestamp();
  RunOutput res = compute();
  persist(g, *base, command, config, started, res, out);
  for (const auto& w : res.warnings) err << "warning: " << w << "\n";
  return res.exit_code;
}

int cmd_eval(const GlobalOptions&, const EvalOptions& o, std::ostream& out) {
  const PhaseFamily fam = phase_family(o.family);
  std::vector<double> values = read_coefficient_file(o.coeffs);
  if (values.size() != fam.dim()) {
    throw UsageError(o.coeffs + ": expected " + std::to_string(fam.dim()) +
                     " coefficients for family " + fam.id + ", got " +
                     std::to_string(values.size()));
  }
  const PhasePolynomial poly(fam.basis, CoefficientVector(values));
  const double f = eval_phase(poly, o.x, o.y);
  const ComplexEstimate est = unit_square_integral(poly, QuadratureConfig{});
  out << "F(" << format_double(o.x) << ", " << format_double(o.y)
      << ") = " << format_double(f) << "\n";
  out << "I = " << format_double(est.value.real()) << " + "
      << format_double(est.value.imag()) << "i\n";
  out << "|I| = " << format_double(std::abs(est.value)) << "\n";
  out << "error estimate = " << format_double(est.abs_error_estimate) << "\n";
  return kExitOk;
}

int cmd_gram_scan(const GlobalOptions& g, const ScanOptions& o,
                  std::ostream& out, std::ostream& err) {
  if (!(o.threshold > 0.0)) throw UsageError("--threshold must be positive");
  const std::uint64_t n = sample_count(g, 100'000);
  json config = {{"samples", n}, {"threshold", o.threshold}};
  return run_persisted(
      g, "gram-scan", config,
      [&] {
        const DegeneracyReport r = degeneracy_scan(n, o.threshold, g.seed);
        out << "fraction G < threshold: " << format_double(r.fraction_gram)
            << "\nfraction |minor| < sqrt(threshold): "
            << format_double(r.fraction_minor) << "\n";
        RunOutput res;
        to_json(res.payload, r);
        res.csv = "n_samples,threshold,fraction_gram,fraction_minor,seed\n" +
                  std::to_string(r.n_samples) + "," +
                  format_double(r.threshold) + "," +
                  format_double(r.fraction_gram) + "," +
                  format_double(r.fraction_minor) + "," +
                  std::to_string(r.seed) + "\n";
        return res;
      },
      out, err);
}

int cmd_shells(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const std::uint64_t n = sample_count(g, 100'000);
  json config = {{"samples", n}};
  return run_persisted(
      g, "shells", config,
      [&] {
        const ShellHistogram h = shell_histogram(n, g.seed);
        out << "p,count\n";
        for (const auto& [p, c] : h.counts) out << p << "," << c << "\n";
        out << "unclassifiable: " << h.unclassifiable << "\n";
        RunOutput res;
        to_json(res.payload, h);
        res.csv = histogram_csv(h);
        if (h.unclassifiable > 0) {
          res.warnings.push_back(std::to_string(h.unclassifiable) +
                                 " samples with G0 = 0 were not classified");
        }
        return res;
      },
      out, err);
}

struct SlabSetup {
  ConstraintSystem sys;
  std::vector<double> u;
  std::vector<double> h;
  double eta = 1e-12;
};

SlabSetup slab_setup(const SlabOptions& o) {
  SlabSetup s;
  if (o.system == "tarry") {
    s = {tarry_difference_system(), std::vector<double>(9, 0.0),
         {0.5, 0.35, 0.25}, 1e-6};
  } else if (o.system == "circle") {
    s = {squared_norm_system(2, -2.0, 2.0), {1.0}, {0.08, 0.04, 0.02}, 1e-12};
  } else if (o.system == "sphere") {
    s = {squared_norm_system(3, -2.0, 2.0), {1.0}, {0.08, 0.04, 0.02}, 1e-12};
  } else if (o.system == "plane3") {
    s = {coordinate_plane_system(3), {0.5}, {0.1, 0.05, 0.025}, 1e-12};
  } else {
    throw UsageError("unknown system '" + o.system +
                     "' (expected tarry, circle, sphere or plane3)");
  }
  if (!o.u.empty()) s.u = o.u;
  if (!o.h.empty()) s.h = o.h;
  if (o.eta >= 0.0) s.eta = o.eta;
  if (s.u.size() != static_cast<std::size_t>(s.sys.n_constraints)) {
    throw UsageError("--level needs " + std::to_string(s.sys.n_constraints) +
                     " values for system " + o.system);
  }
  return s;
}

int cmd_slab(const GlobalOptions& g, const SlabOptions& o, std::ostream& out,
             std::ostream& err) {
  const SlabSetup s = slab_setup(o);
  const std::uint64_t n = sample_count(g, 1'000'000);
  json config = {{"system", o.system}, {"u", s.u},     {"h", s.h},
                 {"eta", s.eta},       {"samples", n}};
  return run_persisted(
      g, "slab", config,
      [&] {
        SlabConfig cfg;
        cfg.n_samples = n;
        cfg.eta = s.eta;
        cfg.seed = g.seed;
        cfg.h = s.h.back();
        ProbeReport rep;
        rep.system_id = s.sys.id;
        rep.u = s.u;
        rep.eta = s.eta;
        rep.n_samples = n;
        rep.seed = g.seed;
        rep.surface = weighted_surface_report(s.sys, Integrand{}, s.u, cfg, s.h);
        RunOutput res;
        to_json(res.payload, rep);
        res.csv = probe_csv(rep);
        out << "h,estimate,stderr\n";
        for (std::size_t k = 0; k < rep.surface.h_sequence.size(); ++k) {
          out << format_double(rep.surface.h_sequence[k]) << ","
              << format_double(rep.surface.estimates[k]) << ","
              << format_double(rep.surface.estimate_std_error[k]) << "\n";
        }
        out << "extrapolated: " << format_double(rep.surface.value) << " +- "
            << format_double(rep.surface.std_error) << "\n";
        if (rep.surface.n_accepted == 0) {
          res.warnings.push_back(
              "no sample landed in the narrowest slab; increase h or samples");
          res.exit_code = kExitNumerical;
        } else if (!rep.surface.stable) {
          res.warnings.push_back(
              "slab estimates disagree across h beyond 5 standard errors");
          res.exit_code = kExitNumerical;
        }
        return res;
      },
      out, err);
}

/// Fits and judges a tail report in place. Returns warnings.
std::vector<std::string> fit_tail(TailReport& rep) {
  std::vector<std::string> warnings;
  if (rep.shells.size() < 3) {
    warnings.push_back("fewer than 3 shells; no decay fit");
    return warnings;
  }
  const DecayFit fit = decay_fit(rep.shells);
  rep.fit = fit;
  rep.verdict = verdict(fit);
  warnings.insert(warnings.end(), fit.warnings.begin(), fit.warnings.end());
  return warnings;
}

void print_fit(const TailReport& rep, std::ostream& out) {
  if (!rep.fit || !rep.verdict) return;
  out << "slope: " << format_double(rep.fit->slope) << " +- "
      << format_double(rep.fit->slope_stderr) << "\n";
  out << "verdict: " << to_string(rep.verdict->status)
      << " (margin " << format_double(rep.verdict->margin) << ")\n";
}

int cmd_tail(const GlobalOptions& g, const TailOptions& o, std::ostream& out,
             std::ostream& err) {
  const PhaseFamily fam = phase_family(o.family);
  if (o.k2 < 0 || o.k2 % 2 != 0) {
    throw UsageError("--k2 must be an even integer >= 0");
  }
  if (o.radii.empty()) throw UsageError("--radii needs at least one radius");
  for (double r : o.radii) {
    if (!(r > 0.0)) throw UsageError("--radii must be positive");
  }
  const std::uint64_t n = sample_count(g, 400);
  const QuadratureConfig quad;
  json config = {{"family", fam.id},
                 {"k2", o.k2},
                 {"radii", o.radii},
                 {"samples", n},
                 {"quadrature", quad_json(quad)}};
  return run_persisted(
      g, "tail", config,
      [&] {
        TailReport rep;
        rep.phase_family = fam.id;
        rep.k2 = o.k2;
        rep.seed = g.seed;
        RunOutput res;
        for (std::size_t k = 0; k < o.radii.size(); ++k) {
          TailShell s = tail_shell(fam, o.k2, o.radii[k], n,
                                   sub_seed(g.seed, k), quad);
          if (s.dropped > 0) {
            res.warnings.push_back(
                "R=" + format_double(s.R) + ": " + std::to_string(s.dropped) +
                " of " + std::to_string(s.n_samples) +
                " samples exceeded the quadrature budget");
          }
          out << "R=" << format_double(s.R) << " estimate "
              << format_double(s.estimate) << " +- "
              << format_double(s.std_error) << "\n";
          rep.shells.push_back(std::move(s));
        }
        try {
          const auto w = fit_tail(rep);
          res.warnings.insert(res.warnings.end(), w.begin(), w.end());
        } catch (const NumericalError& e) {
          res.warnings.push_back(e.what());
          res.exit_code = kExitNumerical;
        }
        print_fit(rep, out);
        to_json(res.payload, rep);
        res.csv = tail_csv(rep);
        res.plot = tail_plot_data(rep);
        return res;
      },
      out, err);
}

TailReport load_tail_report(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  // Either a bare tail report or a run record that wraps one.
  if (doc.contains("outputs") && doc.contains("command")) {
    if (doc.at("command") != "tail") {
      throw UsageError(path + ": run record is not from the tail command");
    }
    doc = doc.at("outputs");
  }
  try {
    TailReport rep;
    from_json(doc, rep);
    return rep;
  } catch (const json::exception& e) {
    throw UsageError(path + ": not a tail report (" + e.what() + ")");
  }
}

int cmd_fit(const GlobalOptions& g, const FitOptions& o, std::ostream& out,
            std::ostream& err) {
  TailReport rep = load_tail_report(o.input);
  const std::optional<Verdict> stored = rep.verdict;
  json shells_json;
  to_json(shells_json, rep);
  json config = {{"input", o.input}, {"report_hash", config_hash(shells_json)}};
  return run_persisted(
      g, "fit", config,
      [&] {
        RunOutput res;
        rep.fit.reset();
        rep.verdict.reset();
        try {
          res.warnings = fit_tail(rep);
        } catch (const NumericalError& e) {
          res.warnings.push_back(e.what());
          res.exit_code = kExitNumerical;
        }
        print_fit(rep, out);
        if (stored && rep.verdict && stored->status != rep.verdict->status) {
          res.warnings.push_back("verdict differs from the one stored in " +
                                 o.input);
        }
        to_json(res.payload, rep);
        res.csv = tail_csv(rep);
        res.plot = tail_plot_data(rep);
        return res;
      },
      out, err);
}

int cmd_oracles(const GlobalOptions& g, const OracleOptions& o,
                std::ostream& out, std::ostream& err) {
  std::vector<int> ids = o.criteria;
  if (ids.empty()) {
    for (int id = 1; id <= kCriterionCount; ++id) ids.push_back(id);
  }
  for (int id : ids) {
    if (id < 1 || id > kCriterionCount) {
      throw UsageError("criterion ids run from 1 to " +
                       std::to_string(kCriterionCount));
    }
  }
  json config = {{"criteria", ids}, {"soft_samples", o.soft_samples}};
  return run_persisted(
      g, "oracles", config,
      [&] {
        BatteryOptions opts;
        opts.seed = g.seed;
        opts.soft_probe_samples = o.soft_samples;
        RunOutput res;
        res.payload = json::array();
        res.csv = "id,name,passed,gating,seconds\n";
        for (int id : ids) {
          const CriterionResult r = run_criterion(id, opts);
          out << format_criterion(r) << std::endl;
          res.payload.push_back({{"id", r.id},
                                 {"name", r.name},
                                 {"passed", r.passed},
                                 {"gating", r.gating},
                                 {"seconds", r.seconds},
                                 {"runtime_limit", r.runtime_limit},
                                 {"detail", r.detail}});
          res.csv += std::to_string(r.id) + ",\"" + r.name + "\"," +
                     (r.passed ? "1" : "0") + "," + (r.gating ? "1" : "0") +
                     "," + format_double(r.seconds) + "\n";
          if (r.gating && !r.passed) {
            res.warnings.push_back("criterion " + std::to_string(id) +
                                   " failed");
            res.exit_code = kExitNumerical;
          }
        }
        return res;
      },
      out, err);
}

void summarize_record(const RunRecord& rec, const std::string& name,
                      std::ostream& out) {
  out << name << ": " << rec.command << " hash " << rec.config_hash
      << " finished " << rec.finished_at << ", " << rec.warnings.size()
      << " warnings\n";
}

int cmd_report(const GlobalOptions& g, const ReportOptions& o,
               std::ostream& out) {
  auto load = [](const fs::path& p) {
    RunRecord rec;
    from_json(json::parse(read_text(p)), rec);
    return rec;
  };
  if (!o.input.empty()) {
    RunRecord rec;
    try {
      rec = load(o.input);
    } catch (const json::exception& e) {
      throw UsageError(o.input + ": not a run record (" + e.what() + ")");
    }
    summarize_record(rec, o.input, out);
    out << "config: " << rec.config.dump() << "\n";
    for (const auto& w : rec.warnings) out << "warning: " << w << "\n";
    out << "outputs:\n" << rec.outputs.dump(2) << "\n";
    return kExitOk;
  }
  if (!fs::is_directory(g.out)) {
    throw UsageError("output directory " + g.out + " does not exist");
  }
  std::vector<fs::path> records;
  for (const auto& entry : fs::directory_iterator(g.out)) {
    const std::string name = entry.path().filename().string();
    if (entry.path().extension() == ".json" &&
        name.find(".report.") == std::string::npos) {
      records.push_back(entry.path());
    }
  }
  std::sort(records.begin(), records.end());
  for (const auto& p : records) {
    try {
      summarize_record(load(p), p.filename().string(), out);
    } catch (const json::exception&) {
      out << p.filename().string() << ": unreadable run record\n";
    }
  }
  out << records.size() << " runs in " << g.out << "\n";
  return kExitOk;
}

/// Fills options that were not given on the command line from the config
/// file. Keys are long option names without the leading dashes.
void apply_config(CLI::App& app, CLI::App* sub,
                  const std::vector<std::pair<std::string, std::string>>& kv,
                  std::ostream& err) {
  for (const auto& [key, value] : kv) {
    CLI::Option* opt = nullptr;
    for (CLI::App* scope : {sub, &app}) {
      if (scope == nullptr || opt != nullptr) continue;
      for (CLI::Option* candidate : scope->get_options()) {
        if (candidate->check_lname(key)) {
          opt = candidate;
          break;
        }
      }
    }
    if (opt == nullptr) {
      err << "warning: config key '" << key << "' is not used by this command\n";
      continue;
    }
    if (key == "config") throw UsageError("config files cannot nest");
    if (opt->count() > 0) continue;  // the command line wins
    opt->clear();
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    kv.emplace_back(key, trim(t.substr(eq + 1)));
  }
  return kv;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Numerical laboratory for the two-dimensional Tarry singular "
               "integral",
               "tarrylab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for every random stream");
  app.add_option("--samples", g.samples,
                 "Sample count (per shell for tail); command default if unset");
  app.add_option("--out", g.out, "Directory for run records and reports");
  app.add_option("--format", g.format, "Report files to write")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_flag("--force", g.force, "Run again even if an identical run exists");
  app.add_option("--config", g.config, "Flat key = value file; flags win");

  EvalOptions eval_o;
  auto* eval = app.add_subcommand("eval", "Evaluate F(x, y) and I(alpha)");
  eval->add_option("--coeffs", eval_o.coeffs, "JSON array of coefficients")
      ->required();
  eval->add_option("--family", eval_o.family, "Phase family of the file");
  eval->add_option("--x", eval_o.x, "x coordinate");
  eval->add_option("--y", eval_o.y, "y coordinate");

  ScanOptions scan_o;
  auto* scan = app.add_subcommand(
      "gram-scan", "Fraction of [0,1]^12 where the Gram determinant is small");
  scan->add_option("--threshold", scan_o.threshold, "Gram threshold");

  auto* shells = app.add_subcommand(
      "shells", "Histogram of [0,1]^24 samples by dyadic shell of G0");

  SlabOptions slab_o;
  auto* slab = app.add_subcommand("slab", "Slab estimate of a surface measure");
  slab->add_option("--system", slab_o.system,
                   "tarry, circle, sphere or plane3");
  slab->add_option("--level", slab_o.u, "Level values u")->delimiter(',');
  slab->add_option("--half-width", slab_o.h, "Decreasing slab half-widths h")
      ->delimiter(',');
  slab->add_option("--eta", slab_o.eta, "Gram floor (system default if unset)");

  TailOptions tail_o;
  auto* tail = app.add_subcommand(
      "tail", "Dyadic tail shells of |I(alpha)|^k2 with a decay fit");
  tail->add_option("--family", tail_o.family,
                   "tarry, linear, quadratic, monomial:d or full1d:n");
  tail->add_option("--k2", tail_o.k2, "Even exponent 2k");
  tail->add_option("--radii", tail_o.radii, "Inner radii of the shells")
      ->delimiter(',');

  FitOptions fit_o;
  auto* fit = app.add_subcommand("fit", "Refit a persisted tail report");
  fit->add_option("--input", fit_o.input, "Tail report or tail run record")
      ->required();

  OracleOptions oracle_o;
  auto* oracles =
      app.add_subcommand("oracles", "Run the acceptance battery of checks");
  oracles->add_option("--criteria", oracle_o.criteria,
                      "Criterion ids to run (default all)")
      ->delimiter(',');
  oracles->add_option("--soft-samples", oracle_o.soft_samples,
                      "Samples per shell for the nine-dimensional probe");

  ReportOptions report_o;
  auto* report = app.add_subcommand("report", "Summarize persisted runs");
  report->add_option("--input", report_o.input, "One run record to show");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    CLI::App* sub = app.get_subcommands().front();
    if (!g.config.empty()) {
      apply_config(app, sub, read_config_file(g.config), err);
    }
    if (sub == eval) return cmd_eval(g, eval_o, out);
    if (sub == scan) return cmd_gram_scan(g, scan_o, out, err);
    if (sub == shells) return cmd_shells(g, out, err);
    if (sub == slab) return cmd_slab(g, slab_o, out, err);
    if (sub == tail) return cmd_tail(g, tail_o, out, err);
    if (sub == fit) return cmd_fit(g, fit_o, out, err);
    if (sub == oracles) return cmd_oracles(g, oracle_o, out, err);
    if (sub == report) return cmd_report(g, report_o, out);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace tarry::cli
