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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tarry/exponent.hpp"
#include "tarry/geometry.hpp"
#include "tarry/matanalysis.hpp"
#include "tarry/momentmap.hpp"
#include "tarry/oscquad.hpp"

namespace tarry {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

struct TailReport {
  std::string phase_family;
  int k2 = 0;
  std::uint64_t seed = 0;
  std::vector<TailShell> shells;
  std::optional<DecayFit> fit;
  std::optional<Verdict> verdict;
};

/// Slab probe of a constraint system over a decreasing h sequence.
struct ProbeReport {
  std::string system_id;
  std::vector<double> u;
  double eta = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  SurfaceEstimate surface;
};

void to_json(nlohmann::json& j, const QuadratureConfig& c);
void from_json(const nlohmann::json& j, QuadratureConfig& c);
void to_json(nlohmann::json& j, const DegeneracyReport& r);
void from_json(const nlohmann::json& j, DegeneracyReport& r);
void to_json(nlohmann::json& j, const GramBoundScan& r);
void from_json(const nlohmann::json& j, GramBoundScan& r);
void to_json(nlohmann::json& j, const ShellHistogram& h);
void from_json(const nlohmann::json& j, ShellHistogram& h);
void to_json(nlohmann::json& j, const TailShell& s);
void from_json(const nlohmann::json& j, TailShell& s);
void to_json(nlohmann::json& j, const DecayFit& f);
void from_json(const nlohmann::json& j, DecayFit& f);
void to_json(nlohmann::json& j, const Verdict& v);
void from_json(const nlohmann::json& j, Verdict& v);
void to_json(nlohmann::json& j, const TailReport& r);
void from_json(const nlohmann::json& j, TailReport& r);
void to_json(nlohmann::json& j, const SurfaceEstimate& s);
void from_json(const nlohmann::json& j, SurfaceEstimate& s);
void to_json(nlohmann::json& j, const ProbeReport& r);
void from_json(const nlohmann::json& j, ProbeReport& r);

/// Columns p,count,fraction; one row per occupied shell.
std::string histogram_csv(const ShellHistogram& h);

/// Columns R,R_outer,k2,estimate,stderr,n,dropped.
std::string tail_csv(const TailReport& r);

/// Two whitespace-separated columns log2(R) log2(estimate); shells with a
/// nonpositive estimate are omitted.
std::string tail_plot_data(const TailReport& r);

/// Columns h,estimate,stderr followed by the extrapolated row (h = 0).
std::string probe_csv(const ProbeReport& r);

/// One persisted command run. `outputs` holds the numerical payload, which
/// depends only on `config`.
struct RunRecord {
  std::string command;
  nlohmann::json config;
  std::string config_hash;
  std::string version = kVersion;
  std::string started_at;
  std::string finished_at;
  nlohmann::json outputs;
  std::vector<std::string> warnings;
};

void to_json(nlohmann::json& j, const RunRecord& r);
void from_json(const nlohmann::json& j, RunRecord& r);

/// 16 hex digits of FNV-1a over the compact dump of the config.
std::string config_hash(const nlohmann::json& config);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// Base path (without extension) for a run's files in `dir`:
/// <command>-<hash>, or <command>-<hash>.<n> with the first unused n when
/// `force` is set and the plain name is taken. Returns nullopt when the run
/// exists and `force` is false.
std::optional<std::filesystem::path> run_base_path(
    const std::filesystem::path& dir, const std::string& command,
    const std::string& hash, bool force);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace tarry
