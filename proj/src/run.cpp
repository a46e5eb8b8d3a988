#include "anderson/run.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "json.hpp"

#include "anderson/asymptotics.hpp"
#include "anderson/conjecture.hpp"
#include "anderson/dos.hpp"
#include "anderson/error.hpp"
#include "anderson/format.hpp"
#include "anderson/free_spectrum.hpp"
#include "anderson/measure.hpp"
#include "anderson/parallel.hpp"

namespace anderson {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) { row(header); }

  void row(std::initializer_list<std::string_view> cells) {
    bool first = true;
    for (auto c : cells) {
      if (!first) out_ += ',';
      out_ += c;
      first = false;
    }
    out_ += '\n';
  }
  const std::string& text() const { return out_; }

 private:
  std::string out_;
};

std::string num(double v) { return format_double(v); }
std::string num(long long v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json string_list(const std::vector<std::string>& v) {
  auto a = ordered_json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

class Runner {
 public:
  Runner(const RunConfig& c, std::string hash, const RunOptions& options, std::ostream& log)
      : c_(c), hash_(std::move(hash)), options_(options), log_(log) {}

  RunOutcome go() {
    meta_["config_hash"] = hash_;
    meta_["experiment"] = to_string(c_.kind);
    meta_["name"] = c_.name;
    switch (c_.kind) {
      case ExperimentKind::free_measure: free_measure_run(); break;
      case ExperimentKind::random_measure: random_measure_run(); break;
      case ExperimentKind::compare: compare_run(); break;
      case ExperimentKind::martingale: martingale_run(); break;
      case ExperimentKind::weak_coupling: weak_coupling_run(); break;
      case ExperimentKind::lemma2: lemma2_run(); break;
      case ExperimentKind::positivity: positivity_run(); break;
      case ExperimentKind::dos: dos_run(); break;
      case ExperimentKind::conjecture: conjecture_run(); break;
    }
    meta_["notes"] = string_list(outcome_.notes);
    emit(c_.name + ".meta.json", meta_.dump(2) + "\n");
    outcome_.exit_code = outcome_.failed_rows() == 0 ? kExitOk : kExitRowFailures;
    return std::move(outcome_);
  }

 private:
  void emit(const std::string& file, const std::string& text) {
    const auto path = options_.out_dir / file;
    write_file_atomic(path, text);
    outcome_.files.push_back(path);
    if (options_.verbose) log_ << "wrote " << path.string() << "\n";
  }

  void ok(std::string label) { outcome_.rows.push_back({std::move(label), true, {}}); }
  void fail(std::string label, const std::string& error) {
    log_ << "row " << label << " failed: " << error << "\n";
    outcome_.rows.push_back({std::move(label), false, error});
  }

  void model_meta() {
    meta_["d"] = c_.d;
    meta_["E"] = c_.energy;
    meta_["K"] = c_.K;
  }

  void field_meta() {
    meta_["profile"] = describe(c_.profile);
    meta_["law"] = describe(c_.law);
    meta_["method"] = to_string(c_.method);
    meta_["master_seed"] = c_.master_seed;
    meta_["seed_count"] = c_.seed_count;
  }

  ExperimentOptions experiment_options() const {
    ExperimentOptions o;
    o.master_seed = c_.master_seed;
    o.seed_count = c_.seed_count;
    o.method = c_.method;
    o.measure = c_.measure;
    return o;
  }

  void free_measure_run() {
    model_meta();
    meta_["L"] = c_.L;
    Csv csv{"position", "multiplicity", "weight"};
    try {
      const auto list = enumerate_window(c_.d, c_.L, c_.energy, c_.K);
      const double w = volume_weight(c_.d, c_.L);
      for (const auto& a : list.atoms) {
        csv.row({num(a.position), num(static_cast<long long>(a.multiplicity)), num(static_cast<double>(a.multiplicity) * w)});
      }
      meta_["atoms"] = list.atoms.size();
      ok("free-measure");
    } catch (const std::exception& e) {
      fail("free-measure", e.what());
    }
    emit(c_.name + ".csv", csv.text());
  }

  void random_measure_run() {
    model_meta();
    meta_["L"] = c_.L;
    field_meta();
    try {
      const auto field = make_field(CubeSpec(c_.d, c_.L), c_.law, c_.profile, c_.master_seed);
      if (c_.method == MeasureMethod::dense) {
        Csv csv{"position", "weight"};
        const auto m = random_measure(field, c_.energy, c_.K, c_.measure);
        for (const auto& a : m.atoms) csv.row({num(a.position), num(a.weight)});
        meta_["atoms"] = m.atoms.size();
        emit(c_.name + ".csv", csv.text());
      } else {
        Csv csv{"grid_x", "count"};
        const auto cf = random_measure_counting(field, c_.energy, -c_.K, c_.K, c_.measure);
        for (std::size_t i = 0; i < cf.midpoint.size(); ++i) {
          csv.row({num(0.5 * (cf.nodes[i] + cf.nodes[i + 1])), num(cf.midpoint[i])});
        }
        meta_["below_lower"] = cf.below_lower;
        meta_["at_upper"] = cf.at_upper;
        meta_["mass"] = cf.mass();
        emit(c_.name + ".csv", csv.text());
      }
      ok("random-measure");
    } catch (const std::exception& e) {
      fail("random-measure", e.what());
      emit(c_.name + ".csv", "");
    }
  }

  void experiment_csv(const ExperimentRecord& record, bool with_aux) {
    Csv csv = with_aux ? Csv{"experiment", "d", "L_or_eta", "seed", "E", "K", "X", "bound", "method", "wall_ms", "aux_bound"}
                       : Csv{"experiment", "d", "L_or_eta", "seed", "E", "K", "X", "bound", "method", "wall_ms"};
    for (const auto& r : record.rows) {
      const std::string wall = c_.record_timing ? num(r.wall_ms) : "0";
      const std::string X = r.ok ? num(r.X) : "nan";
      const std::string bound = r.ok ? num(r.bound) : "nan";
      if (with_aux) {
        csv.row({r.experiment, num(r.d), num(r.parameter), num(r.seed), num(r.energy), num(r.half_width), X, bound,
                 to_string(r.method), wall, r.ok ? num(r.aux_bound) : "nan"});
      } else {
        csv.row({r.experiment, num(r.d), num(r.parameter), num(r.seed), num(r.energy), num(r.half_width), X, bound,
                 to_string(r.method), wall});
      }
      const std::string label = "L_or_eta=" + num(r.parameter) + " seed=" + num(r.seed);
      if (r.ok) ok(label);
      else fail(label, r.error);
    }
    emit(c_.name + ".csv", csv.text());
    Csv summary{"L_or_eta", "median_abs_X", "rows"};
    for (const auto& s : record.summary) {
      summary.row({num(s.parameter), num(s.median_abs_X), num(static_cast<long long>(s.rows))});
    }
    emit(c_.name + ".summary.csv", summary.text());
    for (const auto& n : record.notes) outcome_.notes.push_back(n);
  }

  void compare_run() {
    model_meta();
    field_meta();
    meta_["test_function"] = c_.f.describe();
    DecayConfig cfg;
    cfg.d = c_.d;
    cfg.Ls = c_.Ls;
    cfg.energy = c_.energy;
    cfg.profile = std::get<Decaying>(c_.profile);
    cfg.law = c_.law;
    cfg.f = c_.f;
    cfg.options = experiment_options();
    experiment_csv(decay_experiment(cfg), false);
  }

  void weak_coupling_run() {
    model_meta();
    field_meta();
    meta_["test_function"] = c_.f.describe();
    meta_["scale_exponent"] = c_.scale.exponent;
    WeakCouplingConfig cfg;
    cfg.d = c_.d;
    cfg.etas = c_.etas;
    cfg.scale = c_.scale;
    cfg.energy = c_.energy;
    cfg.law = c_.law;
    cfg.f = c_.f;
    cfg.options = experiment_options();
    experiment_csv(weak_coupling_experiment(cfg), true);
  }

  void martingale_run() {
    meta_["d"] = c_.d;
    meta_["epsilon"] = c_.epsilon;
    meta_["L_max"] = c_.L_max;
    meta_["law"] = describe(c_.law);
    meta_["master_seed"] = c_.master_seed;
    meta_["seed_count"] = c_.seed_count;
    const auto n = static_cast<std::size_t>(c_.seed_count);
    std::vector<MartingaleTrace> traces(n);
    std::vector<std::string> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      try {
        traces[k] = martingale_trace(c_.d, c_.epsilon, c_.law, c_.master_seed + k, c_.L_max);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
    Csv csv{"seed", "L", "M", "normalized"};
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t seed = c_.master_seed + k;
      if (!errors[k].empty()) {
        fail("seed=" + num(seed), errors[k]);
        continue;
      }
      for (std::size_t L = 0; L < traces[k].M.size(); ++L) {
        csv.row({num(seed), num(static_cast<long long>(L)), num(traces[k].M[L]), num(traces[k].normalized[L])});
      }
      ok("seed=" + num(seed));
    }
    emit(c_.name + ".csv", csv.text());
  }

  void lemma2_run() {
    model_meta();
    Lemma2Config cfg;
    cfg.d = c_.d;
    cfg.energy = c_.energy;
    cfg.K = c_.K;
    cfg.Ls = c_.Ls;
    cfg.f = c_.test_function_given ? c_.f : TestFunction(Bump{0.0, c_.K});
    cfg.gammas = c_.gammas;
    cfg.gamma_Ls = c_.gamma_Ls;
    cfg.allow_outside_regime = c_.allow_outside_regime;
    meta_["test_function"] = cfg.f.describe();
    Csv csv{"L", "integral"};
    Csv gamma{"gamma", "L", "I"};
    try {
      const auto table = lemma2_diagnostic(cfg);
      for (const auto& [L, v] : table.integrals) csv.row({num(L), num(v)});
      for (const auto& [g, L, v] : table.gamma_sums) gamma.row({num(g), num(L), num(v)});
      for (const auto& n : table.notes) outcome_.notes.push_back(n);
      ok("lemma2");
    } catch (const std::exception& e) {
      fail("lemma2", e.what());
    }
    emit(c_.name + ".csv", csv.text());
    emit(c_.name + ".gamma.csv", gamma.text());
  }

  void positivity_run() {
    model_meta();
    meta_["L"] = c_.L;
    meta_["delta"] = c_.delta;
    Csv csv{"L", "integral", "reference", "ratio"};
    try {
      const auto p = positivity_check(c_.d, c_.energy, c_.K, c_.delta, c_.L);
      csv.row({num(c_.L), num(p.integral), num(p.reference), num(p.ratio)});
      ok("positivity");
    } catch (const std::exception& e) {
      fail("positivity", e.what());
    }
    emit(c_.name + ".csv", csv.text());
  }

  void dos_run() {
    meta_["r"] = c_.r;
    meta_["grid_size"] = c_.grid_size;
    Csv csv{"E", "n"};
    try {
      const auto g = dos_grid(c_.r, c_.grid_size);
      for (std::size_t i = 0; i < g.energy.size(); ++i) csv.row({num(g.energy[i]), num(g.density[i])});
      meta_["normalization"] = g.normalization;
      meta_["grid_mass"] = g.grid_mass;
      meta_["symmetry_defect"] = g.symmetry_defect;
      ok("dos");
    } catch (const std::exception& e) {
      fail("dos", e.what());
    }
    emit(c_.name + ".csv", csv.text());
    if (!c_.t_grid.empty()) {
      const auto table = fourier_decay_check(c_.r, c_.t_grid);
      Csv decay{"t", "magnitude", "scaled"};
      for (const auto& row : table.rows) decay.row({num(row.t), num(row.magnitude), num(row.scaled)});
      meta_["sup_scaled"] = table.sup_scaled;
      emit(c_.name + ".decay.csv", decay.text());
    }
  }

  void conjecture_run() {
    model_meta();
    meta_["test_function"] = c_.f.describe();
    ConjectureSpec spec;
    spec.d = c_.d;
    spec.energy = c_.energy;
    spec.k_max = c_.k_max;
    spec.theta_tolerance = c_.theta_tolerance;
    Csv csv{"L_or_limit", "value", "self_convergence"};
    try {
      const auto cmp = conjecture_comparison(spec, c_.f, c_.Ls);
      for (const auto& r : cmp.rows) csv.row({r.L == 0 ? "limit" : num(r.L), num(r.value), num(r.self_convergence)});
      meta_["k_max"] = cmp.limit.refined.k_max;
      meta_["k0_term"] = cmp.limit.refined.k0_term;
      meta_["tail"] = cmp.limit.refined.tail;
      for (const auto& n : cmp.limit.notes) outcome_.notes.push_back(n);
      ok("conjecture");
    } catch (const std::exception& e) {
      fail("conjecture", e.what());
    }
    emit(c_.name + ".csv", csv.text());
  }

  const RunConfig& c_;
  std::string hash_;
  const RunOptions& options_;
  std::ostream& log_;
  ordered_json meta_ = ordered_json::object();
  RunOutcome outcome_;
};

}  // namespace

std::size_t RunOutcome::failed_rows() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.ok ? 0 : 1;
  return n;
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

RunOutcome run(const RunConfig& config, std::string_view config_text, const RunOptions& options, std::ostream& log) {
  const auto start = utc_now();
  const int threads = options.threads > 0 ? options.threads : config.threads;
  if (threads > 0) set_thread_count(threads);
  fs::create_directories(options.out_dir);
  const auto hash = config_hash(config_text);
  if (options.verbose) log << "running " << to_string(config.kind) << " '" << config.name << "' (config " << hash << ")\n";

  auto outcome = Runner(config, hash, options, log).go();

  ordered_json manifest;
  manifest["config_hash"] = hash;
  manifest["tool_version"] = std::string(kToolVersion);
  manifest["experiment"] = to_string(config.kind);
  manifest["name"] = config.name;
  manifest["start_time"] = start;
  manifest["end_time"] = utc_now();
  manifest["threads"] = thread_count();
  auto files = ordered_json::array();
  for (const auto& f : outcome.files) files.push_back(f.filename().string());
  manifest["outputs"] = files;
  auto rows = ordered_json::array();
  for (const auto& r : outcome.rows) {
    ordered_json row;
    row["label"] = r.label;
    row["status"] = r.ok ? "ok" : "failed";
    if (!r.ok) row["error"] = r.error;
    rows.push_back(row);
  }
  manifest["rows"] = rows;
  manifest["failed_rows"] = outcome.failed_rows();
  manifest["notes"] = string_list(outcome.notes);
  manifest["config"] = std::string(config_text);
  const auto path = options.out_dir / "manifest.json";
  write_file_atomic(path, manifest.dump(2) + "\n");
  outcome.files.push_back(path);
  return outcome;
}

std::string config_from_manifest(std::string_view text) {
  const auto j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("config") || !j["config"].is_string()) {
    throw ConfigError("not a run manifest (no embedded config)");
  }
  return j["config"].get<std::string>();
}

int run_text(std::string_view text, const RunOptions& options, std::ostream& log) {
  std::string source(text);
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') {
    try {
      source = config_from_manifest(source);
    } catch (const ConfigError& e) {
      log << "config error: " << e.what() << "\n";
      return kExitConfigError;
    }
  }
  const auto parsed = parse_config(source);
  for (const auto& n : parsed.notes) log << "note: " << n << "\n";
  if (!parsed.config) {
    for (const auto& e : parsed.errors) log << "config error: " << e << "\n";
    return kExitConfigError;
  }
  try {
    const auto outcome = run(*parsed.config, source, options, log);
    for (const auto& n : outcome.notes) log << "note: " << n << "\n";
    if (outcome.exit_code != kExitOk) {
      log << outcome.failed_rows() << " of " << outcome.rows.size() << " rows failed\n";
    } else if (options.verbose) {
      log << outcome.rows.size() << " rows ok\n";
    }
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace anderson
