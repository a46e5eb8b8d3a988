#include "anderson/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <utility>

#include "anderson/error.hpp"
#include "anderson/format.hpp"

namespace anderson {

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 9> kKindNames{{
    {ExperimentKind::free_measure, "free-measure"},
    {ExperimentKind::random_measure, "random-measure"},
    {ExperimentKind::compare, "compare"},
    {ExperimentKind::martingale, "martingale"},
    {ExperimentKind::weak_coupling, "weak-coupling"},
    {ExperimentKind::lemma2, "lemma2"},
    {ExperimentKind::positivity, "positivity"},
    {ExperimentKind::dos, "dos"},
    {ExperimentKind::conjecture, "conjecture"},
}};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"run", {"kind", "name", "threads", "record_timing"}},
      {"model", {"d", "L", "Ls", "E", "K"}},
      {"profile", {"kind", "amplitude", "epsilon", "eta"}},
      {"law", {"kind", "half_width", "p", "sigma"}},
      {"scale", {"exponent", "etas"}},
      {"test_function", {"shape", "center", "half_width", "ramp", "amplitude"}},
      {"seeds", {"master", "count"}},
      {"method", {"kind", "dense_cap", "counting_nodes", "eigen_tolerance", "counting_budget"}},
      {"martingale", {"epsilon", "L_max"}},
      {"lemma2", {"gammas", "gamma_Ls", "allow_outside_regime"}},
      {"positivity", {"delta"}},
      {"dos", {"r", "grid_size", "t_grid"}},
      {"conjecture", {"k_max", "theta_tolerance"}},
  };
  return s;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::vector<std::string>& errors)
      : entries_(std::move(entries)), errors_(errors) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  void require(const std::string& key) {
    if (!has(key)) errors_.push_back(key + ": required");
  }

  template <typename T>
  void get(const std::string& key, T& out) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return;
    if (!parse(it->second.value, out)) error(key, "cannot parse '" + it->second.value + "'");
  }

  template <typename T>
  void get_list(const std::string& key, std::vector<T>& out) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return;
    out.clear();
    std::string_view rest = it->second.value;
    while (true) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      T v{};
      if (item.empty() || !parse(std::string(item), v)) {
        error(key, "cannot parse list item '" + std::string(item) + "'");
        out.clear();
        return;
      }
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }

  std::string word(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second.value;
  }

  void error(const std::string& key, const std::string& message) {
    const auto it = entries_.find(key);
    const std::string where = it == entries_.end() ? "" : " (line " + std::to_string(it->second.line) + ")";
    errors_.push_back(key + where + ": " + message);
  }

 private:
  static bool parse(const std::string& s, double& out) {
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && p == end && std::isfinite(out);
  }
  static bool parse(const std::string& s, int& out) {
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && p == end;
  }
  static bool parse(const std::string& s, std::uint64_t& out) {
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && p == end;
  }
  static bool parse(const std::string& s, bool& out) {
    if (s == "true") out = true;
    else if (s == "false") out = false;
    else return false;
    return true;
  }

  std::map<std::string, Entry> entries_;
  std::vector<std::string>& errors_;
};

void read_profile(Reader& in, RunConfig& c) {
  const auto kind = in.word("profile.kind", "decaying");
  if (kind == "decaying") {
    Decaying p;
    in.get("profile.amplitude", p.amplitude);
    in.get("profile.epsilon", p.epsilon);
    if (in.has("profile.eta")) in.error("profile.eta", "only valid for profile.kind = constant");
    c.profile = p;
  } else if (kind == "constant") {
    Constant p;
    in.get("profile.eta", p.eta);
    for (const char* k : {"profile.amplitude", "profile.epsilon"})
      if (in.has(k)) in.error(k, "only valid for profile.kind = decaying");
    c.profile = p;
  } else {
    in.error("profile.kind", "unknown profile '" + kind + "' (decaying, constant)");
    return;
  }
  try {
    validate(c.profile);
  } catch (const ConfigError& e) {
    in.error("profile", e.what());
  }
}

void read_law(Reader& in, RunConfig& c) {
  const auto kind = in.word("law.kind", "uniform_sym");
  const std::map<std::string, std::string> owner{{"law.half_width", "uniform_sym"}, {"law.p", "bernoulli"}, {"law.sigma", "gaussian"}};
  for (const auto& [key, law] : owner)
    if (in.has(key) && law != kind) in.error(key, "only valid for law.kind = " + law);
  if (kind == "uniform_sym") {
    UniformSym l;
    in.get("law.half_width", l.half_width);
    c.law = l;
  } else if (kind == "uniform01") {
    c.law = Uniform01{};
  } else if (kind == "bernoulli") {
    Bernoulli l;
    in.get("law.p", l.p);
    c.law = l;
  } else if (kind == "gaussian") {
    Gaussian l;
    in.get("law.sigma", l.sigma);
    c.law = l;
  } else {
    in.error("law.kind", "unknown law '" + kind + "' (uniform_sym, uniform01, bernoulli, gaussian)");
    return;
  }
  try {
    validate(c.law);
  } catch (const ConfigError& e) {
    in.error("law", e.what());
  }
}

void read_test_function(Reader& in, RunConfig& c) {
  for (const char* k : {"test_function.shape", "test_function.center", "test_function.half_width", "test_function.ramp",
                        "test_function.amplitude"})
    if (in.has(k)) c.test_function_given = true;
  const auto shape = in.word("test_function.shape", "bump");
  double amplitude = 1.0;
  in.get("test_function.amplitude", amplitude);
  TestFunctionShape s;
  if (shape == "bump") {
    Bump b;
    in.get("test_function.center", b.center);
    in.get("test_function.half_width", b.half_width);
    s = b;
  } else if (shape == "raised_cosine2") {
    RaisedCosine2 b;
    in.get("test_function.half_width", b.half_width);
    s = b;
  } else if (shape == "plateau") {
    Plateau b;
    in.get("test_function.half_width", b.half_width);
    in.get("test_function.ramp", b.ramp);
    s = b;
  } else {
    in.error("test_function.shape", "unknown shape '" + shape + "' (bump, raised_cosine2, plateau)");
    return;
  }
  if (shape != "bump" && in.has("test_function.center")) in.error("test_function.center", "only valid for shape = bump");
  if (shape != "plateau" && in.has("test_function.ramp")) in.error("test_function.ramp", "only valid for shape = plateau");
  try {
    c.f = TestFunction(s, amplitude);
  } catch (const ConfigError& e) {
    in.error("test_function", e.what());
  }
}

void check_common(Reader& in, RunConfig& c, std::vector<std::string>& notes) {
  using K = ExperimentKind;
  const bool needs_d = c.kind != K::dos;
  if (needs_d) in.require("model.d");
  if (needs_d && c.d < 1) in.error("model.d", "must be >= 1");
  const bool needs_energy = c.kind != K::dos && c.kind != K::martingale;
  if (needs_energy) {
    in.require("model.E");
    if (c.d >= 1 && std::abs(c.energy) > 2.0 * c.d) {
      in.error("model.E", "E outside [-2d, 2d] (E=" + format_double(c.energy) + ", d=" + std::to_string(c.d) + ")");
    }
  }
  if (in.has("model.K") && !(c.K > 0.0)) in.error("model.K", "must be > 0");
  for (int L : c.Ls)
    if (L < 1) in.error("model.Ls", "every L must be >= 1");
  if (c.L < 1) in.error("model.L", "must be >= 1");
  if (c.seed_count < 1) in.error("seeds.count", "must be >= 1");
  if (c.threads < 0) in.error("run.threads", "must be >= 0");

  switch (c.kind) {
    case K::free_measure:
    case K::random_measure:
      in.require("model.L");
      in.require("model.K");
      break;
    case K::compare:
      in.require("model.Ls");
      if (!std::holds_alternative<Decaying>(c.profile)) in.error("profile.kind", "compare needs a decaying profile");
      if (c.d < 3) notes.push_back("compare with d=" + std::to_string(c.d) + " is outside the d >= 3 regime of the theorem");
      break;
    case K::martingale:
      if (!(c.epsilon > 0.0)) in.error("martingale.epsilon", "must be > 0");
      if (c.L_max < 0) in.error("martingale.L_max", "must be >= 0");
      break;
    case K::weak_coupling:
      in.require("scale.etas");
      for (double eta : c.etas)
        if (eta < 0.0) in.error("scale.etas", "every eta must be >= 0");
      try {
        c.scale.validate();
      } catch (const ConfigError& e) {
        in.error("scale.exponent", e.what());
      }
      break;
    case K::lemma2:
      in.require("model.Ls");
      if (!(c.K > 0.0)) in.error("model.K", "must be > 0");
      for (double g : c.gammas)
        if (!(std::abs(g) < 1.0)) in.error("lemma2.gammas", "every gamma must satisfy |gamma| < 1");
      for (int L : c.gamma_Ls)
        if (L < 1) in.error("lemma2.gamma_Ls", "every L must be >= 1");
      break;
    case K::positivity:
      in.require("model.L");
      in.require("model.K");
      if (!(c.delta > 0.0 && c.delta < 1.0)) in.error("positivity.delta", "must lie in (0, 1)");
      break;
    case K::dos:
      in.require("dos.r");
      if (c.r < 1) in.error("dos.r", "must be >= 1");
      if (c.grid_size < 2) in.error("dos.grid_size", "must be >= 2");
      break;
    case K::conjecture:
      if (c.d < 2) in.error("model.d", "conjecture needs d >= 2");
      if (c.d >= 1 && std::abs(c.energy) >= 2.0 * c.d) in.error("model.E", "conjecture needs |E| < 2d");
      if (c.k_max < 0) in.error("conjecture.k_max", "must be >= 0");
      if (!(c.theta_tolerance > 0.0)) in.error("conjecture.theta_tolerance", "must be > 0");
      if (c.d >= 2 && c.d < 4) notes.push_back("conjecture with d=" + std::to_string(c.d) + " is outside the d >= 4 regime");
      break;
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return std::string(name);
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

ConfigParse parse_config(std::string_view text) {
  ConfigParse out;
  auto& errors = out.errors;
  std::map<std::string, Entry> entries;
  std::string section;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto comment = line.find_first_of("#;");
    line = trim(line.substr(0, comment));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + ": malformed section header");
        section.clear();
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().count(section)) {
        errors.push_back(where + ": unknown section [" + section + "]");
        section.clear();
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(where + ": expected key = value");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (section.empty()) {
      errors.push_back(where + ": key '" + key + "' outside a known section");
      continue;
    }
    const std::string full = section + "." + key;
    if (!schema().at(section).count(key)) {
      errors.push_back(full + " (" + where + "): unknown key");
      continue;
    }
    if (value.empty()) {
      errors.push_back(full + " (" + where + "): empty value");
      continue;
    }
    if (const auto it = entries.find(full); it != entries.end()) {
      errors.push_back(full + " (" + where + "): duplicate key, first set on line " + std::to_string(it->second.line));
      continue;
    }
    entries.emplace(full, Entry{value, line_no});
  }

  Reader in(std::move(entries), errors);
  RunConfig c;
  in.require("run.kind");
  if (in.has("run.kind")) {
    const auto kind = in.word("run.kind", "");
    if (const auto k = parse_experiment_kind(kind)) {
      c.kind = *k;
    } else {
      in.error("run.kind", "unknown experiment '" + kind + "'");
    }
  }
  c.name = in.word("run.name", c.name);
  if (c.name.find_first_of("/\\") != std::string::npos) in.error("run.name", "must not contain path separators");
  in.get("run.threads", c.threads);
  in.get("run.record_timing", c.record_timing);

  in.get("model.d", c.d);
  in.get("model.L", c.L);
  in.get_list("model.Ls", c.Ls);
  in.get("model.E", c.energy);
  in.get("model.K", c.K);

  read_profile(in, c);
  read_law(in, c);
  in.get("scale.exponent", c.scale.exponent);
  in.get_list("scale.etas", c.etas);
  read_test_function(in, c);

  in.get("seeds.master", c.master_seed);
  in.get("seeds.count", c.seed_count);

  const auto method = in.word("method.kind", "dense");
  if (method == "dense") c.method = MeasureMethod::dense;
  else if (method == "counting") c.method = MeasureMethod::counting;
  else in.error("method.kind", "unknown method '" + method + "' (dense, counting)");
  in.get("method.dense_cap", c.measure.dense_cap);
  in.get("method.counting_nodes", c.measure.counting_nodes);
  in.get("method.eigen_tolerance", c.measure.eigen_tolerance);
  in.get("method.counting_budget", c.counting_budget);
  if (c.measure.counting_nodes < 1) in.error("method.counting_nodes", "must be >= 1");
  if (!(c.measure.eigen_tolerance > 0.0)) in.error("method.eigen_tolerance", "must be > 0");

  in.get("martingale.epsilon", c.epsilon);
  in.get("martingale.L_max", c.L_max);
  in.get_list("lemma2.gammas", c.gammas);
  in.get_list("lemma2.gamma_Ls", c.gamma_Ls);
  in.get("lemma2.allow_outside_regime", c.allow_outside_regime);
  in.get("positivity.delta", c.delta);
  in.get("dos.r", c.r);
  in.get("dos.grid_size", c.grid_size);
  in.get_list("dos.t_grid", c.t_grid);
  in.get("conjecture.k_max", c.k_max);
  in.get("conjecture.theta_tolerance", c.theta_tolerance);

  if (in.has("run.kind")) check_common(in, c, out.notes);
  if (errors.empty()) out.config = std::move(c);
  return out;
}

std::string config_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace anderson
