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

#include "tarry/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tarry {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void to_json(json& j, const QuadratureConfig& c) {
  j = json{{"base_points_per_panel", c.base_points_per_panel},
           {"panels_per_unit_frequency", c.panels_per_unit_frequency},
           {"refinement_tolerance", c.refinement_tolerance},
           {"max_panels", c.max_panels}};
}

void from_json(const json& j, QuadratureConfig& c) {
  j.at("base_points_per_panel").get_to(c.base_points_per_panel);
  j.at("panels_per_unit_frequency").get_to(c.panels_per_unit_frequency);
  j.at("refinement_tolerance").get_to(c.refinement_tolerance);
  j.at("max_panels").get_to(c.max_panels);
}

void to_json(json& j, const DegeneracyReport& r) {
  j = json{{"n_samples", r.n_samples},
           {"threshold", r.threshold},
           {"fraction_gram", r.fraction_gram},
           {"fraction_minor", r.fraction_minor},
           {"seed", r.seed}};
}

void from_json(const json& j, DegeneracyReport& r) {
  j.at("n_samples").get_to(r.n_samples);
  j.at("threshold").get_to(r.threshold);
  j.at("fraction_gram").get_to(r.fraction_gram);
  j.at("fraction_minor").get_to(r.fraction_minor);
  j.at("seed").get_to(r.seed);
}

void to_json(json& j, const GramBoundScan& r) {
  j = json{{"n_samples", r.n_samples},
           {"bound", r.bound},
           {"violations", r.violations},
           {"max_gram", r.max_gram},
           {"seed", r.seed}};
}

void from_json(const json& j, GramBoundScan& r) {
  j.at("n_samples").get_to(r.n_samples);
  j.at("bound").get_to(r.bound);
  j.at("violations").get_to(r.violations);
  j.at("max_gram").get_to(r.max_gram);
  j.at("seed").get_to(r.seed);
}

void to_json(json& j, const ShellHistogram& h) {
  json shells = json::array();
  for (const auto& [p, c] : h.counts) {
    shells.push_back({{"p", p},
                      {"count", c},
                      {"fraction", static_cast<double>(c) / h.n_samples}});
  }
  j = json{{"n_samples", h.n_samples},
           {"seed", h.seed},
           {"unclassifiable", h.unclassifiable},
           {"shells", shells}};
}

void from_json(const json& j, ShellHistogram& h) {
  j.at("n_samples").get_to(h.n_samples);
  j.at("seed").get_to(h.seed);
  j.at("unclassifiable").get_to(h.unclassifiable);
  h.counts.clear();
  for (const auto& s : j.at("shells")) {
    h.counts[s.at("p").get<int>()] = s.at("count").get<std::uint64_t>();
  }
}

void to_json(json& j, const TailShell& s) {
  j = json{{"R", s.R},
           {"R_outer", s.R_outer},
           {"k2", s.k2},
           {"estimate", s.estimate},
           {"stderr", s.std_error},
           {"n", s.n_samples},
           {"dropped", s.dropped},
           {"strata", s.strata}};
}

void from_json(const json& j, TailShell& s) {
  j.at("R").get_to(s.R);
  j.at("R_outer").get_to(s.R_outer);
  j.at("k2").get_to(s.k2);
  j.at("estimate").get_to(s.estimate);
  j.at("stderr").get_to(s.std_error);
  j.at("n").get_to(s.n_samples);
  j.at("dropped").get_to(s.dropped);
  j.at("strata").get_to(s.strata);
}

void to_json(json& j, const DecayFit& f) {
  j = json{{"slope", f.slope},
           {"intercept", f.intercept},
           {"stderr", f.slope_stderr},
           {"shells_used", f.shells_used},
           {"warnings", f.warnings}};
}

void from_json(const json& j, DecayFit& f) {
  j.at("slope").get_to(f.slope);
  j.at("intercept").get_to(f.intercept);
  j.at("stderr").get_to(f.slope_stderr);
  j.at("shells_used").get_to(f.shells_used);
  j.at("warnings").get_to(f.warnings);
}

void to_json(json& j, const Verdict& v) {
  j = json{{"status", std::string(to_string(v.status))},
           {"fitted_total_exponent", v.fitted_total_exponent},
           {"margin", v.margin}};
}

void from_json(const json& j, Verdict& v) {
  v.status = verdict_status_from_string(j.at("status").get<std::string>());
  j.at("fitted_total_exponent").get_to(v.fitted_total_exponent);
  j.at("margin").get_to(v.margin);
}

void to_json(json& j, const TailReport& r) {
  j = json{{"phase_family", r.phase_family},
           {"k2", r.k2},
           {"seed", r.seed},
           {"shells", r.shells}};
  j["fit"] = r.fit ? json(*r.fit) : json(nullptr);
  j["verdict"] = r.verdict ? json(*r.verdict) : json(nullptr);
}

void from_json(const json& j, TailReport& r) {
  j.at("phase_family").get_to(r.phase_family);
  j.at("k2").get_to(r.k2);
  j.at("seed").get_to(r.seed);
  j.at("shells").get_to(r.shells);
  r.fit.reset();
  r.verdict.reset();
  if (j.contains("fit") && !j.at("fit").is_null()) r.fit = j.at("fit").get<DecayFit>();
  if (j.contains("verdict") && !j.at("verdict").is_null()) {
    r.verdict = j.at("verdict").get<Verdict>();
  }
}

void to_json(json& j, const SurfaceEstimate& s) {
  j = json{{"value", s.value},
           {"stderr", s.std_error},
           {"h_used", s.h_used},
           {"n_accepted", s.n_accepted},
           {"h_sequence", s.h_sequence},
           {"estimates", s.estimates},
           {"estimate_stderr", s.estimate_std_error},
           {"slope", s.slope},
           {"stable", s.stable}};
}

void from_json(const json& j, SurfaceEstimate& s) {
  j.at("value").get_to(s.value);
  j.at("stderr").get_to(s.std_error);
  j.at("h_used").get_to(s.h_used);
  j.at("n_accepted").get_to(s.n_accepted);
  j.at("h_sequence").get_to(s.h_sequence);
  j.at("estimates").get_to(s.estimates);
  j.at("estimate_stderr").get_to(s.estimate_std_error);
  j.at("slope").get_to(s.slope);
  j.at("stable").get_to(s.stable);
}

void to_json(json& j, const ProbeReport& r) {
  j = json{{"system_id", r.system_id},
           {"u", r.u},
           {"h_sequence", r.surface.h_sequence},
           {"eta", r.eta},
           {"n_samples", r.n_samples},
           {"seed", r.seed},
           {"estimates", r.surface.estimates},
           {"extrapolated", r.surface.value},
           {"stderr", r.surface.std_error},
           {"surface", r.surface}};
}

void from_json(const json& j, ProbeReport& r) {
  j.at("system_id").get_to(r.system_id);
  j.at("u").get_to(r.u);
  j.at("eta").get_to(r.eta);
  j.at("n_samples").get_to(r.n_samples);
  j.at("seed").get_to(r.seed);
  j.at("surface").get_to(r.surface);
}

std::string histogram_csv(const ShellHistogram& h) {
  std::ostringstream out;
  out << "p,count,fraction\n";
  for (const auto& [p, c] : h.counts) {
    out << p << "," << c << ","
        << format_double(static_cast<double>(c) / h.n_samples) << "\n";
  }
  return out.str();
}

std::string tail_csv(const TailReport& r) {
  std::ostringstream out;
  out << "R,R_outer,k2,estimate,stderr,n,dropped\n";
  for (const auto& s : r.shells) {
    out << format_double(s.R) << "," << format_double(s.R_outer) << "," << s.k2
        << "," << format_double(s.estimate) << "," << format_double(s.std_error)
        << "," << s.n_samples << "," << s.dropped << "\n";
  }
  return out.str();
}

std::string tail_plot_data(const TailReport& r) {
  std::ostringstream out;
  out << "# log2(R) log2(estimate)\n";
  for (const auto& s : r.shells) {
    if (!(s.estimate > 0.0)) continue;
    out << format_double(std::log2(s.R)) << " "
        << format_double(std::log2(s.estimate)) << "\n";
  }
  return out.str();
}

std::string probe_csv(const ProbeReport& r) {
  std::ostringstream out;
  out << "h,estimate,stderr\n";
  const auto& s = r.surface;
  for (std::size_t k = 0; k < s.h_sequence.size(); ++k) {
    out << format_double(s.h_sequence[k]) << "," << format_double(s.estimates[k])
        << "," << format_double(s.estimate_std_error[k]) << "\n";
  }
  out << "0," << format_double(s.value) << "," << format_double(s.std_error)
      << "\n";
  return out.str();
}

void to_json(json& j, const RunRecord& r) {
  j = json{{"command", r.command},
           {"config", r.config},
           {"config_hash", r.config_hash},
           {"version", r.version},
           {"started_at", r.started_at},
           {"finished_at", r.finished_at},
           {"outputs", r.outputs},
           {"warnings", r.warnings}};
}

void from_json(const json& j, RunRecord& r) {
  j.at("command").get_to(r.command);
  r.config = j.at("config");
  j.at("config_hash").get_to(r.config_hash);
  j.at("version").get_to(r.version);
  j.at("started_at").get_to(r.started_at);
  j.at("finished_at").get_to(r.finished_at);
  r.outputs = j.at("outputs");
  j.at("warnings").get_to(r.warnings);
}

std::string config_hash(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::filesystem::path> run_base_path(
    const std::filesystem::path& dir, const std::string& command,
    const std::string& hash, bool force) {
  const std::string stem = command + "-" + hash;
  const auto base = dir / stem;
  auto taken = [](const std::filesystem::path& b) {
    return std::filesystem::exists(b.string() + ".json");
  };
  if (!taken(base)) return base;
  if (!force) return std::nullopt;
  for (int n = 1;; ++n) {
    const auto candidate = dir / (stem + "." + std::to_string(n));
    if (!taken(candidate)) return candidate;
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace tarry
