// Runs the frenet executable and checks exit codes and outputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "frenet_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string at(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args) {
  const std::string cmd = std::string(FRENET_EXE) + " " + args + " >" + at("stdout.txt") + " 2>" + at("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const std::string& name, const std::string& text) { std::ofstream(at(name), std::ios::binary) << text; }

nlohmann::json json_at(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

void write_circle(const std::string& name, double radius = 1.0, std::size_t n = 512) {
  const auto c = frenet::SampledCurve::closed_from(n, 2, [&](double t) { return frenet::Vec{{radius * std::cos(t), radius * std::sin(t)}}; });
  frenet::cli::write_curve(at(name), c);
}

const char* kR3Profile = R"({"n": 2, "kind": "fourier", "components": [{"cos": [1.0], "sin": [0.5]}, {"cos": [0.5, 0.4]}]})";

}  // namespace

TEST_CASE("analyze a circle") {
  write_circle("circle.json");
  REQUIRE(run("analyze " + at("circle.json") + " --out " + at("circle_profile.json") + " --report " + at("circle_report.json")) == 0);
  const auto p = json_at(at("circle_profile.json"));
  CHECK(p["kind"] == "table");
  for (double k : p["components"][0]) CHECK(std::abs(k - 1.0) < 1e-6);
  const auto r = json_at(at("circle_report.json"));
  CHECK(r["max_frame_residual"].get<double>() < 1e-12);
  CHECK(std::abs(r["min_speed"].get<double>() - 1.0) < 1e-9);
}

TEST_CASE("analyze the R3 helix and a CSV circle") {
  const frenet::SampledCurve c = frenet::SampledCurve::open_from(2001, 3, 0.0, 2.0 * std::numbers::pi, [](double t) {
    return frenet::Vec{{std::cos(t), std::sin(t), 0.5 * t}};
  });
  frenet::cli::write_curve(at("helix_r3.json"), c);
  REQUIRE(run("analyze " + at("helix_r3.json") + " --out " + at("helix_profile.json")) == 0);
  const auto p = json_at(at("helix_profile.json"));
  for (double k : p["components"][0]) CHECK(std::abs(k - 0.8) < 1e-4);
  for (double k : p["components"][1]) CHECK(std::abs(k - 0.4) < 1e-4);

  write_circle("circle.csv", 2.0, 256);
  REQUIRE(run("analyze " + at("circle.csv") + " --out " + at("csv_profile.json") + " --samples 64") == 0);
  const auto q = json_at(at("csv_profile.json"));
  CHECK(q["components"][0].size() == 64);
  for (double k : q["components"][0]) CHECK(std::abs(k - 0.5) < 1e-6);
}

TEST_CASE("corrupt input exits 2 without output") {
  put("corrupt.json", "{\"dim\": 2, \"closed\": tru");
  fs::remove(at("never.json"));
  CHECK(run("analyze " + at("corrupt.json") + " --out " + at("never.json")) == 2);
  CHECK_FALSE(fs::exists(at("never.json")));
  CHECK(run("analyze " + at("missing.json")) == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("analyze reports a degenerate frame with its parameter") {
  const auto line = frenet::SampledCurve::open_from(64, 3, 0.0, 1.0, [](double t) { return frenet::Vec{{t, 2.0 * t, 3.0 * t}}; });
  frenet::cli::write_curve(at("line.json"), line);
  CHECK(run("analyze " + at("line.json") + " --out " + at("line_profile.json")) == 3);
  CHECK(slurp(at("stderr.txt")).find("t = ") != std::string::npos);
}

TEST_CASE("helix subcommand") {
  REQUIRE(run("helix --k 2 --out " + at("k2.json") + " --spec " + at("k2_spec.json")) == 0);
  const auto s = json_at(at("k2_spec.json"));
  CHECK(std::abs(s["frequencies"][0].get<double>() - 2.0) < 1e-12);
  const auto c = frenet::cli::read_curve(at("k2.json"));
  CHECK(c.closed);
  CHECK(c.dim == 2);

  REQUIRE(run("helix --k 1,1,1 --return-delta 1e-2 --spec " + at("k111.json")) == 0);
  const auto h = json_at(at("k111.json"));
  const double b0 = h["frequencies"][0], b1 = h["frequencies"][1];
  CHECK(std::abs(b0 * b0 - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-10);
  CHECK(std::abs(b1 * b1 - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-10);
  CHECK(h["return"]["u"].get<double>() > 0.0);
  CHECK(h["return"]["gap"].get<double>() < 1e-2);

  CHECK(run("helix --k 1,0") == 3);
}

TEST_CASE("verify subcommand") {
  write_circle("unit.json");
  put("one.json", R"({"n": 1, "kind": "fourier", "components": [{"cos": [1.0]}]})");
  put("onehalf.json", R"({"n": 1, "kind": "fourier", "components": [{"cos": [1.5]}]})");
  CHECK(run("verify " + at("unit.json") + " " + at("one.json") + " --eps 0.01") == 0);
  CHECK(run("verify " + at("unit.json") + " " + at("onehalf.json") + " --eps 0.1 --out " + at("v.json")) == 1);
  CHECK(std::abs(json_at(at("v.json"))["max_deviation"].get<double>() - 0.5) < 1e-6);

  const auto open = frenet::SampledCurve::open_from(64, 2, 0.0, 3.0, [](double t) { return frenet::Vec{{std::cos(t), std::sin(t)}}; });
  frenet::cli::write_curve(at("open.json"), open);
  CHECK(run("verify " + at("open.json") + " " + at("one.json") + " --eps 0.1") == 2);
  CHECK(slurp(at("stderr.txt")).find("closed curve required") != std::string::npos);
}

TEST_CASE("profile positivity is checked on load") {
  put("neg.json", R"({"n": 2, "kind": "fourier", "components": [{"cos": [0.2], "sin": [0.5]}, {"cos": [1.0]}]})");
  CHECK(run("approximate " + at("neg.json") + " --eps 0.1") == 2);
  CHECK(slurp(at("stderr.txt")).find("component 1") != std::string::npos);
}

TEST_CASE("approximate subcommand") {
  put("r3.json", kR3Profile);
  CHECK(run("approximate " + at("r3.json") + " --eps 0") == 2);
  const std::string base = "approximate " + at("r3.json") + " --eps 0.1 --seed 5";
  REQUIRE(run(base + " --out " + at("a1.json") + " --report " + at("a1_report.json")) == 0);
  const auto r = json_at(at("a1_report.json"));
  CHECK(r["passed"] == true);
  CHECK(r["verification"]["max_deviation"].get<double>() < 0.1);
  REQUIRE(run(base + " --out " + at("a2.json") + " --report " + at("a2_report.json")) == 0);
  CHECK(slurp(at("a1.json")) == slurp(at("a2.json")));
  CHECK(slurp(at("a1_report.json")) == slurp(at("a2_report.json")));
  CHECK(run("verify " + at("a1.json") + " " + at("r3.json") + " --eps 0.1") == 0);
  // no arc around t0 fits a modification share this small
  CHECK(run("approximate " + at("r3.json") + " --eps 0.1 --budget-modify 1e-12 --report " + at("fail_report.json")) == 4);
  CHECK(json_at(at("fail_report.json"))["passed"] == false);
}

TEST_CASE("plot subcommand") {
  write_circle("plot_circle.json");
  REQUIRE(run("plot " + at("plot_circle.json") + " --out " + at("c1.svg")) == 0);
  REQUIRE(run("plot " + at("plot_circle.json") + " --out " + at("c2.svg")) == 0);
  CHECK(slurp(at("c1.svg")) == slurp(at("c2.svg")));
  CHECK(slurp(at("c1.svg")).find("<polygon") != std::string::npos);
  const auto c = frenet::SampledCurve::closed_from(64, 3, [](double t) { return frenet::Vec{{std::cos(t), std::sin(t), 0.1 * std::sin(2 * t)}}; });
  frenet::cli::write_curve(at("r3c.json"), c);
  CHECK(run("plot " + at("r3c.json") + " --out " + at("bad.svg") + " --plane 0,7") == 2);
  CHECK(run("plot " + at("r3c.json") + " --out " + at("ok.svg") + " --plane 1,2") == 0);
}
