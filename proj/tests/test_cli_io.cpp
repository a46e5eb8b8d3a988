#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "anderson/config.hpp"
#include "anderson/format.hpp"
#include "anderson/run.hpp"

using namespace anderson;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("anderson_cli_io_" + name);
  fs::remove_all(dir);
  return dir;
}

bool has_error(const ConfigParse& p, const std::string& needle) {
  for (const auto& e : p.errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

const char* kFree = R"([run]
kind = free-measure
name = free

[model]
d = 1
L = 1
E = 0
K = 10
)";

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(1e300) == "1e+300");
  CHECK(std::stod(format_double(2.0 / 7.0)) == 2.0 / 7.0);
}

TEST_CASE("config parsing") {
  const auto ok = parse_config(kFree);
  REQUIRE(ok.config);
  CHECK(ok.config->kind == ExperimentKind::free_measure);
  CHECK(ok.config->L == 1);
  CHECK(ok.config->K == 10.0);
  CHECK(ok.config->master_seed == 1);
  CHECK(ok.config->method == MeasureMethod::dense);

  const auto bad_energy = parse_config("[run]\nkind = free-measure\n[model]\nd = 3\nL = 2\nE = 7\nK = 1\n");
  CHECK_FALSE(bad_energy.config);
  CHECK(has_error(bad_energy, "E outside [-2d, 2d]"));

  const auto dup = parse_config("[run]\nkind = dos\n[dos]\nr = 2\nr = 3\n");
  CHECK(has_error(dup, "dos.r"));
  CHECK(has_error(dup, "duplicate"));

  const auto many = parse_config("[run]\nkind = compare\nbogus = 1\n[model]\nd = x\nLs = 3, four\nE = 5\n[nowhere]\n");
  CHECK(many.errors.size() >= 4);
  CHECK(has_error(many, "run.bogus"));
  CHECK(has_error(many, "model.d"));
  CHECK(has_error(many, "model.Ls"));
  CHECK(has_error(many, "[nowhere]"));

  const auto missing = parse_config("[model]\nd = 2\n");
  CHECK(has_error(missing, "run.kind: required"));

  const auto warn = parse_config("[run]\nkind = compare\n[model]\nd = 2\nLs = 2\nE = 1\n");
  REQUIRE(warn.config);
  CHECK_FALSE(warn.notes.empty());

  const auto scale = parse_config("[run]\nkind = weak-coupling\n[model]\nd = 2\nE = 1\n[scale]\netas = 0.1\nexponent = 0.5\n");
  CHECK(has_error(scale, "scale.exponent"));

  const auto law = parse_config("[run]\nkind = martingale\n[model]\nd = 1\n[law]\nkind = uniform_sym\np = 0.3\n");
  CHECK(has_error(law, "law.p"));
}

TEST_CASE("config hash") {
  CHECK(config_hash("") == "cbf29ce484222325");
  CHECK(config_hash("a") == "af63dc4c8601ec8c");
  CHECK(config_hash(kFree) != config_hash(std::string(kFree) + " "));
}

TEST_CASE("free-measure run writes three atoms") {
  const auto dir = scratch("free");
  std::ostringstream log;
  CHECK(run_text(kFree, {dir, 0, false}, log) == kExitOk);
  const auto csv = slurp(dir / "free.csv");
  CHECK(csv.rfind("position,multiplicity,weight\n", 0) == 0);
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 4);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(fs::exists(dir / "free.meta.json"));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(slurp(dir / "free.meta.json").find(config_hash(kFree)) != std::string::npos);
}

TEST_CASE("config errors give exit code 2") {
  std::ostringstream log;
  CHECK(run_text("[run]\nkind = nothing\n", {scratch("bad"), 0, false}, log) == kExitConfigError);
  CHECK(log.str().find("run.kind") != std::string::npos);
  CHECK(run_text("{\"not\": \"a manifest\"}", {scratch("bad2"), 0, false}, log) == kExitConfigError);
}

TEST_CASE("row failures give exit code 1") {
  const char* text = "[run]\nkind = random-measure\nname = big\n[model]\nd = 3\nL = 6\nE = 0\nK = 1\n[method]\ndense_cap = 100\n";
  std::ostringstream log;
  const auto dir = scratch("fail");
  CHECK(run_text(text, {dir, 0, false}, log) == kExitRowFailures);
  CHECK(slurp(dir / "manifest.json").find("\"failed\"") != std::string::npos);
}

TEST_CASE("compare with zero amplitude and Bernoulli martingale are exactly zero") {
  const char* compare = R"([run]
kind = compare
name = zero
[model]
d = 3
Ls = 2, 3
E = 5
[profile]
kind = decaying
amplitude = 0
[test_function]
half_width = 4
[seeds]
count = 2
)";
  const auto dir = scratch("zero");
  std::ostringstream log;
  REQUIRE(run_text(compare, {dir, 0, false}, log) == kExitOk);
  std::istringstream rows(slurp(dir / "zero.csv"));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "experiment,d,L_or_eta,seed,E,K,X,bound,method,wall_ms");
  int n = 0;
  while (std::getline(rows, line)) {
    CHECK(line.find(",4,0,0,dense,0") != std::string::npos);
    ++n;
  }
  CHECK(n == 4);

  const char* mart = "[run]\nkind = martingale\nname = m\n[model]\nd = 2\n[law]\nkind = bernoulli\n[martingale]\nL_max = 6\n[seeds]\ncount = 3\n";
  const auto mdir = scratch("mart");
  REQUIRE(run_text(mart, {mdir, 0, false}, log) == kExitOk);
  std::istringstream m(slurp(mdir / "m.csv"));
  std::getline(m, line);
  CHECK(line == "seed,L,M,normalized");
  n = 0;
  while (std::getline(m, line)) {
    CHECK(line.substr(line.find(',', line.find(',') + 1)) == ",0,0");
    ++n;
  }
  CHECK(n == 21);
}

TEST_CASE("reruns are byte identical, also from the manifest") {
  const char* text = R"([run]
kind = random-measure
name = rm
[model]
d = 2
L = 5
E = 0.5
K = 3
[law]
kind = gaussian
sigma = 0.5
[seeds]
master = 42
)";
  std::ostringstream log;
  const auto a = scratch("rerun_a");
  const auto b = scratch("rerun_b");
  REQUIRE(run_text(text, {a, 0, false}, log) == kExitOk);
  REQUIRE(run_text(slurp(a / "manifest.json"), {b, 1, false}, log) == kExitOk);
  CHECK(slurp(a / "rm.csv") == slurp(b / "rm.csv"));
  CHECK(slurp(a / "rm.meta.json") == slurp(b / "rm.meta.json"));
  CHECK(config_from_manifest(slurp(b / "manifest.json")) == text);
}
