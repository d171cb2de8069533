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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "cli.hpp"
#include "tarry/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = tarry::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("tarry_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

/// Value printed after "label" on its own line.
double read_value(const std::string& text, const std::string& label) {
  const auto pos = text.find(label);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + label.size()));
}

std::vector<fs::path> files_with(const fs::path& dir, const std::string& suffix) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string n = e.path().filename().string();
    if (n.size() >= suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval prints the phase and the integral") {
  const fs::path d = fresh_dir("eval");
  const auto zero = write_file(d / "zero.json", "[0,0,0,0,0,0,0,0,0]");
  Result r = run({"eval", "--coeffs", zero.string()});
  CHECK(r.code == 0);
  CHECK(read_value(r.out, "= ") == 0.0);
  CHECK(read_value(r.out, "|I| = ") == doctest::Approx(1.0));

  const auto one = write_file(d / "one.json", "[0,0,0,0,0,0,0,1,0]");
  r = run({"eval", "--coeffs", one.string(), "--x", "0.25"});
  CHECK(r.code == 0);
  CHECK(read_value(r.out, "|I| = ") <= 1e-10);
  CHECK(read_value(r.out, ") = ") == 0.25);

  const auto half = write_file(d / "half.json", "[0,0,0,0,0,0,0,0.5,0]");
  r = run({"eval", "--coeffs", half.string()});
  CHECK(read_value(r.out, "|I| = ") == doctest::Approx(0.63662).epsilon(1e-5));
}

TEST_CASE("eval reports bad input as a usage error") {
  const fs::path d = fresh_dir("eval_bad");
  const auto bad = write_file(d / "bad.json", "[0, 0,\n  0, x]");
  Result r = run({"eval", "--coeffs", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find(":2:") != std::string::npos);
  const auto shortf = write_file(d / "short.json", "[1, 2]");
  CHECK(run({"eval", "--coeffs", shortf.string()}).code == 2);
  CHECK(run({"eval", "--coeffs", (d / "missing.json").string()}).code == 2);
  CHECK(run({"eval"}).code == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"tail", "--samples", "0", "--out", fresh_dir("zero").string()}).code == 2);
  CHECK(run({"tail", "--k2", "3", "--out", fresh_dir("k2").string()}).code == 2);
  CHECK(run({"gram-scan", "--format", "xml"}).code == 2);
  CHECK(run({"oracles", "--criteria", "12"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("gram-scan persists, skips reruns and is reproducible") {
  const fs::path d = fresh_dir("scan");
  const std::vector<std::string> base = {"gram-scan", "--samples", "2000", "--seed", "3",
                                         "--out", d.string(), "--threshold", "1e300"};
  Result r = run(base);
  CHECK(r.code == 0);
  const auto reports = files_with(d, ".report.json");
  REQUIRE(reports.size() == 1);
  const json rep = json::parse(tarry::read_text(reports[0]));
  CHECK(rep.at("fraction_gram") == 1.0);

  r = run(base);
  CHECK(r.code == 0);
  CHECK(r.out.find("already exists") != std::string::npos);
  CHECK(files_with(d, ".report.json").size() == 1);

  auto forced = base;
  forced.push_back("--force");
  CHECK(run(forced).code == 0);
  const auto both = files_with(d, ".report.json");
  REQUIRE(both.size() == 2);
  CHECK(tarry::read_text(both[0]) == tarry::read_text(both[1]));
}

TEST_CASE("gram-scan fraction is monotone in the threshold") {
  const fs::path d = fresh_dir("scan_mono");
  double prev = 2.0;
  for (const char* t : {"1e-2", "1e-6", "1e-10"}) {
    CHECK(run({"gram-scan", "--samples", "5000", "--threshold", t, "--out", d.string()}).code == 0);
    double f = 0.0;
    for (const auto& p : files_with(d, ".report.json")) {
      const json j = json::parse(tarry::read_text(p));
      if (j.at("threshold") == std::stod(t)) f = j.at("fraction_gram");
    }
    CHECK(f <= prev);
    prev = f;
  }
}

TEST_CASE("tail then fit reproduces the verdict") {
  const fs::path d = fresh_dir("tail");
  Result r = run({"tail", "--family", "quadratic", "--k2", "6", "--radii", "4,8,16,32",
                  "--samples", "2000", "--out", d.string(), "--format", "both"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: ") != std::string::npos);
  REQUIRE(files_with(d, ".report.json").size() == 1);
  CHECK(files_with(d, ".csv").size() == 1);
  CHECK(files_with(d, ".plot.dat").size() == 1);
  const fs::path report = files_with(d, ".report.json")[0];
  const json tail = json::parse(tarry::read_text(report));

  Result f = run({"fit", "--input", report.string(), "--out", d.string()});
  CHECK(f.code == 0);
  CHECK(f.err.find("verdict differs") == std::string::npos);
  const auto records = files_with(d, ".json");
  json fit_rec;
  for (const auto& p : records) {
    const json j = json::parse(tarry::read_text(p));
    if (j.contains("command") && j.at("command") == "fit") fit_rec = j;
  }
  REQUIRE(fit_rec.is_object());
  CHECK(fit_rec.at("outputs").at("verdict") == tail.at("verdict"));
  CHECK(fit_rec.at("outputs").at("fit").at("slope") == tail.at("fit").at("slope"));

  // The run record of the tail command is accepted as well.
  for (const auto& p : records) {
    const json j = json::parse(tarry::read_text(p));
    if (j.contains("command") && j.at("command") == "tail") {
      CHECK(run({"fit", "--input", p.string(), "--out", d.string(), "--force"}).code == 0);
    }
  }
  const auto junk = write_file(d / "junk.txt", "not json");
  CHECK(run({"fit", "--input", junk.string(), "--out", d.string()}).code == 2);
}

TEST_CASE("too few shells for a fit is a numerical failure only when it matters") {
  const fs::path d = fresh_dir("tail_short");
  Result r = run({"tail", "--family", "linear", "--k2", "2", "--radii", "4,8", "--samples",
                  "100", "--out", d.string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("fewer than 3 shells") != std::string::npos);
}

TEST_CASE("config file values apply and flags win") {
  const fs::path d = fresh_dir("config");
  const auto cfg = write_file(d / "run.cfg",
                              "# scan settings\nsamples = 1500\nthreshold = 1e300\nseed = 5\n"
                              "out = " + d.string() + "\n");
  Result r = run({"gram-scan", "--config", cfg.string(), "--seed", "6"});
  CHECK(r.code == 0);
  const auto reports = files_with(d, ".report.json");
  REQUIRE(reports.size() == 1);
  const json rep = json::parse(tarry::read_text(reports[0]));
  CHECK(rep.at("n_samples") == 1500);
  CHECK(rep.at("seed") == 6);

  const auto bad = write_file(d / "bad.cfg", "samples 10\n");
  CHECK(run({"gram-scan", "--config", bad.string()}).code == 2);
  CHECK(run({"gram-scan", "--config", (d / "none.cfg").string()}).code == 2);
}

TEST_CASE("slab, shells, oracles and report") {
  const fs::path d = fresh_dir("misc");
  Result r = run({"slab", "--system", "circle", "--samples", "400000", "--out", d.string()});
  CHECK(r.code == 0);
  CHECK(read_value(r.out, "extrapolated: ") == doctest::Approx(3.14159).epsilon(0.05));
  CHECK(run({"slab", "--system", "torus", "--out", d.string()}).code == 2);
  CHECK(run({"slab", "--system", "circle", "--level", "1,2", "--out", d.string()}).code == 2);

  r = run({"shells", "--samples", "500", "--out", d.string(), "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(files_with(d, ".csv").size() == 1);

  r = run({"oracles", "--criteria", "4,5,7", "--out", d.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS [4]") != std::string::npos);
  CHECK(r.out.find("PASS [7]") != std::string::npos);

  r = run({"report", "--out", d.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("3 runs in") != std::string::npos);
  const auto rec = files_with(d, ".json");
  std::string record;
  for (const auto& p : rec) {
    if (p.string().find(".report.") == std::string::npos) record = p.string();
  }
  r = run({"report", "--input", record});
  CHECK(r.code == 0);
  CHECK(r.out.find("outputs:") != std::string::npos);
  CHECK(run({"report", "--out", (d / "nowhere").string()}).code == 2);
}

TEST_CASE("unstable slab runs exit 1 and are still persisted") {
  const fs::path d = fresh_dir("unstable");
  Result r = run({"slab", "--system", "plane3", "--level", "0.99", "--half-width", "0.5,0.005",
                  "--samples", "200000", "--out", d.string()});
  CHECK(r.code == 1);
  CHECK(files_with(d, ".report.json").size() == 1);
}

}  // TEST_SUITE
