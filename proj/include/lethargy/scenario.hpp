#ifndef LETHARGY_SCENARIO_HPP
#define LETHARGY_SCENARIO_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lethargy/construction.hpp"
#include "lethargy/distance.hpp"
#include "lethargy/errors.hpp"
#include "lethargy/space_core.hpp"
#include "lethargy/targets.hpp"

namespace lethargy {

enum class Mode { check_only, finite, prefix, sequence };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::check_only: return "check_only";
    case Mode::finite: return "finite";
    case Mode::prefix: return "prefix";
    case Mode::sequence: return "sequence";
  }
  return "?";
}

struct SubspaceCheckSpec {
  std::size_t k = 2;
  std::size_t samples = 16;
};

// A validated scenario; generator tags are already expanded into `chain`.
struct Scenario {
  std::string name;
  std::size_t ambient_dim = 0;
  NormSpec norm;
  std::string generator;  // "coordinate", "polynomial_grid" or "explicit"
  Chain chain;
  TargetSequence targets;
  Mode mode = Mode::finite;
  double tolerance = 1e-6;
  std::optional<std::size_t> n;      // prefix
  std::optional<std::size_t> n_max;  // sequence
  std::uint64_t seed = 0;
  std::optional<SubspaceCheckSpec> subspace_check;
};

namespace detail {

using json = nlohmann::json;

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw InputError(where + ": unknown field '" + it.key() + "'");
  }
}

inline const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  return v.get<double>();
}

inline std::size_t count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

inline NormSpec parse_norm(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return NormSpec::sup();
    throw InputError("norm_p: expected a number >= 1 or \"inf\"");
  }
  return NormSpec(number(v, "norm_p"));
}

inline json norm_to_json(const NormSpec& n) {
  if (n.is_sup()) return "inf";
  return n.p();
}

// Columns t^0, ..., t^degree sampled at `points` equispaced nodes of [0, 1].
inline Matrix vandermonde(std::size_t points, std::size_t degree) {
  Matrix v(static_cast<Eigen::Index>(points), static_cast<Eigen::Index>(degree + 1));
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    double p = 1.0;
    for (std::size_t j = 0; j <= degree; ++j, p *= t) v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p;
  }
  return v;
}

inline Chain parse_chain(const json& spec, std::size_t dim, const NormSpec& norm, std::string& generator) {
  if (!spec.is_object()) throw InputError("chain: expected an object");
  Chain c{dim, norm, {}};
  if (spec.contains("explicit")) {
    reject_unknown(spec, {"explicit"}, "chain");
    generator = "explicit";
    const json& levels = spec.at("explicit");
    if (!levels.is_array()) throw InputError("chain.explicit: expected a list of levels");
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const std::string where = "chain.explicit[" + std::to_string(k) + "]";
      const json& cols = levels[k];
      if (!cols.is_array()) throw InputError(where + ": expected a list of basis columns");
      Matrix b(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (!cols[j].is_array() || cols[j].size() != dim) {
          throw InputError(where + "[" + std::to_string(j) + "]: column must have ambient_dim entries");
        }
        for (std::size_t i = 0; i < dim; ++i) {
          b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = number(cols[j][i], where);
        }
      }
      c.levels.emplace_back(b);
    }
    return c;
  }
  const std::string gen = field(spec, "generator", "chain").is_string() ? spec.at("generator").get<std::string>() : "";
  generator = gen;
  if (gen == "coordinate") {
    reject_unknown(spec, {"generator", "levels"}, "chain");
    const std::size_t levels = count(field(spec, "levels", "chain"), "chain.levels");
    if (levels > dim) throw InputError("chain.levels: at most ambient_dim coordinate levels");
    return Chain::coordinate(dim, levels, norm);
  }
  if (gen == "polynomial_grid") {
    reject_unknown(spec, {"generator", "grid_points", "degrees"}, "chain");
    const std::size_t points = count(field(spec, "grid_points", "chain"), "chain.grid_points");
    if (points != dim) throw InputError("chain.grid_points must equal ambient_dim");
    const json& degs = field(spec, "degrees", "chain");
    if (!degs.is_array()) throw InputError("chain.degrees: expected a list");
    for (const json& d : degs) {
      const std::size_t deg = count(d, "chain.degrees");
      if (deg + 1 > points) throw InputError("chain.degrees: degree must be below grid_points");
      c.levels.emplace_back(vandermonde(points, deg));
    }
    return c;
  }
  throw InputError("chain.generator: expected \"coordinate\" or \"polynomial_grid\" (or an \"explicit\" basis list)");
}

inline TargetSequence parse_targets(const json& spec) {
  if (!spec.is_object()) throw InputError("targets: expected an object");
  reject_unknown(spec, {"values", "tail", "ratio"}, "targets");
  TargetSequence t;
  const json& vals = field(spec, "values", "targets");
  if (!vals.is_array()) throw InputError("targets.values: expected a list");
  for (const json& v : vals) t.values.push_back(number(v, "targets.values"));
  const std::string tail = spec.contains("tail") ? spec.at("tail").get<std::string>() : "zero";
  if (tail == "zero") {
    if (spec.contains("ratio")) throw InputError("targets.ratio: only allowed with a geometric tail");
    t.tail = TailKind::zero;
  } else if (tail == "geometric") {
    t.tail = TailKind::geometric;
    t.ratio = number(field(spec, "ratio", "targets"), "targets.ratio");
  } else {
    throw InputError("targets.tail: expected \"zero\" or \"geometric\"");
  }
  t.validate();
  return t;
}

inline Mode parse_mode(const json& v) {
  const std::string m = v.is_string() ? v.get<std::string>() : "";
  if (m == "check_only") return Mode::check_only;
  if (m == "finite") return Mode::finite;
  if (m == "prefix") return Mode::prefix;
  if (m == "sequence") return Mode::sequence;
  throw InputError("mode: expected check_only, finite, prefix or sequence");
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
  using detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("parse error at line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
  }
  try {
    if (!j.is_object()) throw InputError("scenario: expected an object");
    detail::reject_unknown(j,
                           {"version", "name", "ambient_dim", "norm_p", "chain", "targets", "mode", "tolerance", "N",
                            "N_max", "seed", "subspace_check"},
                           "scenario");
    const json& ver = detail::field(j, "version", "scenario");
    if (!ver.is_string() || ver.get<std::string>() != "1") throw InputError("version: only \"1\" is supported");
    Scenario s;
    s.name = detail::field(j, "name", "scenario").get<std::string>();
    s.ambient_dim = detail::count(detail::field(j, "ambient_dim", "scenario"), "ambient_dim");
    if (s.ambient_dim == 0) throw InputError("ambient_dim: must be positive");
    s.norm = detail::parse_norm(detail::field(j, "norm_p", "scenario"));
    s.chain = detail::parse_chain(detail::field(j, "chain", "scenario"), s.ambient_dim, s.norm, s.generator);
    const ChainReport cr = validate_chain(s.chain);
    if (!cr.ok) throw InputError("chain: " + cr.message);
    s.targets = detail::parse_targets(detail::field(j, "targets", "scenario"));
    s.mode = detail::parse_mode(detail::field(j, "mode", "scenario"));
    if (j.contains("tolerance")) {
      s.tolerance = detail::number(j.at("tolerance"), "tolerance");
      if (!(s.tolerance > 0.0)) throw InputError("tolerance: must be positive");
    }
    if (j.contains("N")) s.n = detail::count(j.at("N"), "N");
    if (j.contains("N_max")) s.n_max = detail::count(j.at("N_max"), "N_max");
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) throw InputError("seed: expected a non-negative integer");
      s.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("subspace_check")) {
      const json& sc = j.at("subspace_check");
      detail::reject_unknown(sc, {"k", "samples"}, "subspace_check");
      SubspaceCheckSpec spec;
      spec.k = detail::count(detail::field(sc, "k", "subspace_check"), "subspace_check.k");
      if (sc.contains("samples")) spec.samples = detail::count(sc.at("samples"), "subspace_check.samples");
      s.subspace_check = spec;
    }
    if (s.mode == Mode::prefix && (!s.n || *s.n == 0)) throw InputError("N: required (positive) in prefix mode");
    if (s.mode == Mode::sequence && (!s.n_max || *s.n_max == 0)) {
      throw InputError("N_max: required (positive) in sequence mode");
    }
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

enum class Verdict { pass, fail, input_error, solver_failure };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::input_error: return "input_error";
    case Verdict::solver_failure: return "solver_failure";
  }
  return "?";
}

inline int exit_code(Verdict v) { return static_cast<int>(v); }

struct LevelRow {
  std::size_t k = 0;
  double target = 0.0;
  double achieved = 0.0;
  double residual = 0.0;
  bool ok = false;
  bool operator==(const LevelRow&) const = default;
};

struct CoefficientRow {
  std::size_t k = 0;
  double lambda = 0.0;
  std::optional<double> bound;
  std::optional<bool> holds;
  bool operator==(const CoefficientRow&) const = default;
};

struct BorodinSummary {
  bool passes = false;
  std::optional<std::size_t> n0;
  std::vector<double> margins;
  std::optional<double> tail_factor;
  bool operator==(const BorodinSummary&) const = default;
};

struct SubspaceSummary {
  std::size_t k = 0;
  double ratio = 0.0;
  std::size_t samples = 0;
  bool no_counterexample = true;
  std::optional<std::size_t> first_counterexample;
  bool operator==(const SubspaceSummary&) const = default;
};

struct Stabilization {
  std::vector<std::vector<std::optional<double>>> differences;  // empty entries: failed prefix
  std::vector<double> max_later;
  std::vector<double> tail_bound;
  bool non_increasing = true;
  bool below_tail_bound = true;
  std::vector<std::string> prefix_errors;
  bool operator==(const Stabilization&) const = default;
};

struct Report {
  std::string scenario;
  std::string mode;
  std::string norm;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::pass;
  std::vector<std::string> messages;
  std::optional<BorodinSummary> borodin;
  std::optional<SubspaceSummary> subspace;
  std::vector<LevelRow> levels;
  std::optional<std::size_t> first_failing_level;
  std::vector<double> x;
  std::optional<double> norm_x;
  std::optional<double> norm_limit;  // d_1 + 1 + tol when the bound applies
  std::vector<CoefficientRow> coefficients;
  std::optional<Stabilization> stabilization;
  std::optional<double> wall_time_ms;  // only with timing enabled; breaks bit-identity
  bool operator==(const Report&) const = default;
};

struct RunOptions {
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<Mode> mode;
  bool timing = false;
};

namespace detail {

inline void fail(Report& r, std::string msg) {
  if (r.verdict == Verdict::pass) r.verdict = Verdict::fail;
  r.messages.push_back(std::move(msg));
}

// Every residual in a report is re-measured here, never copied from a trace.
inline void measure_levels(Report& r, const Scenario& s, const Vector& x, std::size_t count) {
  const double dtol = std::min(default_distance_tol(s.norm), r.tolerance / 10.0);
  for (std::size_t k = 1; k <= count; ++k) {
    LevelRow row;
    row.k = k;
    row.target = s.targets.at(k);
    row.achieved = rho(x, s.chain.level(k), s.norm, dtol).value;
    row.residual = std::abs(row.achieved - row.target);
    row.ok = row.residual <= r.tolerance;
    if (!row.ok && !r.first_failing_level) {
      r.first_failing_level = k;
      fail(r, "level " + std::to_string(k) + " residual " + std::to_string(row.residual) + " exceeds tolerance");
    }
    r.levels.push_back(row);
  }
  r.x.assign(x.begin(), x.end());
  r.norm_x = norm_eval(x, s.norm);
}

inline void check_norm_bound(Report& r, const TargetSequence& d) {
  if (!d.strictly_decreasing() || d.size() == 0) return;
  r.norm_limit = d.at(1) + 1.0 + r.tolerance;
  if (!(*r.norm_x <= *r.norm_limit)) fail(r, "norm bound ||x|| <= d_1 + 1 violated");
}

inline void run_checks(Report& r, const Scenario& s, std::uint64_t seed) {
  const BorodinReport b = check_borodin_condition(s.targets);
  r.borodin = BorodinSummary{b.passes, b.n0, b.margins, b.tail_factor};
  if (!b.passes) fail(r, "tail-sum condition fails: " + b.message);
  if (s.subspace_check) {
    // Samples in span{y_k, y_{k+1}, ...} of the step vectors above level k.
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<Vector> steps;
    for (std::size_t j = s.subspace_check->k; j < s.chain.extended_size(); ++j) {
      steps.push_back(normalize_step(s.chain, j));
    }
    std::vector<Vector> samples;
    for (std::size_t i = 0; i < s.subspace_check->samples && !steps.empty(); ++i) {
      Vector q = Vector::Zero(static_cast<Eigen::Index>(s.ambient_dim));
      for (const Vector& y : steps) q += coef(gen) * y;
      samples.push_back(q);
    }
    const SubspaceConditionReport sc = check_subspace_condition(s.chain, s.targets, samples, s.subspace_check->k);
    r.subspace = SubspaceSummary{s.subspace_check->k, sc.ratio, samples.size(), sc.no_counterexample,
                                 sc.first_counterexample};
    r.messages.push_back("subspace condition: " + sc.message);
    if (!sc.no_counterexample) fail(r, "subspace condition counterexample found");
  }
}

}  // namespace detail

inline Report run(const Scenario& s, const RunOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.scenario = s.name;
  const Mode mode = opts.mode.value_or(s.mode);
  r.mode = to_string(mode);
  r.norm = s.norm.to_string();
  r.tolerance = opts.tolerance.value_or(s.tolerance);
  r.seed = opts.seed.value_or(s.seed);
  ConstructOptions copts;
  copts.tol = r.tolerance;
  try {
    switch (mode) {
      case Mode::check_only:
        detail::run_checks(r, s, r.seed);
        break;
      case Mode::finite: {
        const ConstructionTrace t = finite_construct(s.chain, s.targets, copts);
        detail::measure_levels(r, s, t.x, s.targets.size());
        detail::check_norm_bound(r, s.targets);
        for (std::size_t k = 1; k <= t.coefficients.size(); ++k) {
          r.coefficients.push_back(CoefficientRow{k, t.coefficients[k - 1], std::nullopt, std::nullopt});
        }
        break;
      }
      case Mode::prefix: {
        if (!s.n) throw InputError("N: required in prefix mode");
        const ConstructionTrace t = construct_prefix(s.chain, s.targets, *s.n, copts);
        detail::measure_levels(r, s, t.x, *s.n);
        for (const CoefficientCheck& c : t.coefficient_checks) {
          r.coefficients.push_back(CoefficientRow{c.k, c.lambda, c.bound, c.holds});
          if (!c.holds) detail::fail(r, "coefficient bound violated at k = " + std::to_string(c.k));
        }
        break;
      }
      case Mode::sequence: {
        if (!s.n_max) throw InputError("N_max: required in sequence mode");
        const SequenceResult seq = construct_sequence(s.chain, s.targets, *s.n_max, copts);
        Stabilization st;
        const auto n = static_cast<std::size_t>(seq.differences.rows());
        st.differences.assign(n, std::vector<std::optional<double>>(n));
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            const double v = seq.differences(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (!std::isnan(v)) st.differences[a][b] = v;
          }
        }
        st.max_later = seq.max_later;
        st.tail_bound = seq.tail_bound;
        st.non_increasing = seq.non_increasing;
        st.below_tail_bound = seq.below_tail_bound;
        st.prefix_errors = seq.errors;
        if (!seq.all_succeeded) detail::fail(r, "some prefixes failed to construct");
        if (!seq.non_increasing) detail::fail(r, "max_{M>N} ||x_N - x_M|| is not non-increasing");
        if (!seq.below_tail_bound) detail::fail(r, "stabilization exceeds the analytic tail bound");
        const auto& last = seq.traces.back();
        if (last) {
          detail::measure_levels(r, s, last->x, *s.n_max);
          for (const CoefficientCheck& c : last->coefficient_checks) {
            r.coefficients.push_back(CoefficientRow{c.k, c.lambda, c.bound, c.holds});
            if (!c.holds) detail::fail(r, "coefficient bound violated at k = " + std::to_string(c.k));
          }
        }
        r.stabilization = std::move(st);
        break;
      }
    }
  } catch (const InputError& e) {
    r.verdict = Verdict::input_error;
    r.messages.push_back(e.what());
  } catch (const SolverError& e) {
    r.verdict = Verdict::solver_failure;
    r.messages.push_back(e.what());
  }
  if (opts.timing) {
    r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

// ---- machine form -------------------------------------------------------

namespace detail {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

inline Verdict parse_verdict(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "input_error") return Verdict::input_error;
  if (s == "solver_failure") return Verdict::solver_failure;
  throw InputError("report: unknown verdict " + s);
}

}  // namespace detail

inline nlohmann::json report_to_json(const Report& r) {
  using detail::json;
  using detail::opt;
  json j;
  j["report_version"] = "1";
  j["exit_codes"] = "0 pass, 1 fail, 2 input error, 3 solver failure";
  j["scenario"] = r.scenario;
  j["mode"] = r.mode;
  j["norm_p"] = r.norm;
  j["tolerance"] = r.tolerance;
  j["seed"] = r.seed;
  j["verdict"] = to_string(r.verdict);
  j["exit_code"] = exit_code(r.verdict);
  j["messages"] = r.messages;
  if (r.borodin) {
    j["borodin"] = {{"passes", r.borodin->passes},
                    {"n0", opt(r.borodin->n0)},
                    {"margins", r.borodin->margins},
                    {"tail_factor", opt(r.borodin->tail_factor)}};
  } else {
    j["borodin"] = nullptr;
  }
  if (r.subspace) {
    j["subspace_check"] = {{"k", r.subspace->k},
                           {"ratio", r.subspace->ratio},
                           {"samples", r.subspace->samples},
                           {"no_counterexample", r.subspace->no_counterexample},
                           {"first_counterexample", opt(r.subspace->first_counterexample)}};
  } else {
    j["subspace_check"] = nullptr;
  }
  json levels = json::array();
  for (const LevelRow& l : r.levels) {
    levels.push_back({{"k", l.k}, {"target", l.target}, {"achieved", l.achieved}, {"residual", l.residual}, {"ok", l.ok}});
  }
  j["levels"] = levels;
  j["first_failing_level"] = opt(r.first_failing_level);
  j["x"] = r.x;
  j["norm_x"] = opt(r.norm_x);
  j["norm_limit"] = opt(r.norm_limit);
  json coefs = json::array();
  for (const CoefficientRow& c : r.coefficients) {
    coefs.push_back({{"k", c.k}, {"lambda", c.lambda}, {"bound", opt(c.bound)}, {"holds", opt(c.holds)}});
  }
  j["coefficients"] = coefs;
  if (r.stabilization) {
    const Stabilization& s = *r.stabilization;
    json diff = json::array();
    for (const auto& row : s.differences) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(opt(v));
      diff.push_back(jr);
    }
    j["stabilization"] = {{"differences", diff},
                          {"max_later", s.max_later},
                          {"tail_bound", s.tail_bound},
                          {"non_increasing", s.non_increasing},
                          {"below_tail_bound", s.below_tail_bound},
                          {"prefix_errors", s.prefix_errors}};
  } else {
    j["stabilization"] = nullptr;
  }
  if (r.wall_time_ms) j["wall_time_ms"] = *r.wall_time_ms;
  return j;
}

inline std::string emit_json(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

inline Report parse_report(const std::string& text) {
  using detail::get_opt;
  using detail::json;
  try {
    const json j = json::parse(text);
    if (j.at("report_version") != "1") throw InputError("report: unsupported report_version");
    Report r;
    r.scenario = j.at("scenario").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.norm = j.at("norm_p").get<std::string>();
    r.tolerance = j.at("tolerance").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.verdict = detail::parse_verdict(j.at("verdict").get<std::string>());
    r.messages = j.at("messages").get<std::vector<std::string>>();
    if (!j.at("borodin").is_null()) {
      const json& b = j.at("borodin");
      r.borodin = BorodinSummary{b.at("passes").get<bool>(), get_opt<std::size_t>(b, "n0"),
                                 b.at("margins").get<std::vector<double>>(), get_opt<double>(b, "tail_factor")};
    }
    if (!j.at("subspace_check").is_null()) {
      const json& s = j.at("subspace_check");
      r.subspace = SubspaceSummary{s.at("k").get<std::size_t>(), s.at("ratio").get<double>(),
                                   s.at("samples").get<std::size_t>(), s.at("no_counterexample").get<bool>(),
                                   get_opt<std::size_t>(s, "first_counterexample")};
    }
    for (const json& l : j.at("levels")) {
      r.levels.push_back(LevelRow{l.at("k").get<std::size_t>(), l.at("target").get<double>(),
                                  l.at("achieved").get<double>(), l.at("residual").get<double>(),
                                  l.at("ok").get<bool>()});
    }
    r.first_failing_level = get_opt<std::size_t>(j, "first_failing_level");
    r.x = j.at("x").get<std::vector<double>>();
    r.norm_x = get_opt<double>(j, "norm_x");
    r.norm_limit = get_opt<double>(j, "norm_limit");
    for (const json& c : j.at("coefficients")) {
      r.coefficients.push_back(CoefficientRow{c.at("k").get<std::size_t>(), c.at("lambda").get<double>(),
                                              get_opt<double>(c, "bound"), get_opt<bool>(c, "holds")});
    }
    if (!j.at("stabilization").is_null()) {
      const json& s = j.at("stabilization");
      Stabilization st;
      for (const json& row : s.at("differences")) {
        std::vector<std::optional<double>> out;
        for (const json& v : row) out.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
        st.differences.push_back(std::move(out));
      }
      st.max_later = s.at("max_later").get<std::vector<double>>();
      st.tail_bound = s.at("tail_bound").get<std::vector<double>>();
      st.non_increasing = s.at("non_increasing").get<bool>();
      st.below_tail_bound = s.at("below_tail_bound").get<bool>();
      st.prefix_errors = s.at("prefix_errors").get<std::vector<std::string>>();
      r.stabilization = std::move(st);
    }
    r.wall_time_ms = get_opt<double>(j, "wall_time_ms");
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

// ---- text form ----------------------------------------------------------

inline std::string emit_text(const Report& r) {
  std::ostringstream os;
  os << "# exit code " << exit_code(r.verdict) << " (0 pass, 1 fail, 2 input error, 3 solver failure)\n";
  os << "scenario  " << r.scenario << "\n"
     << "mode      " << r.mode << "\n"
     << "norm      l^" << r.norm << "\n"
     << "tolerance " << std::setprecision(3) << std::scientific << r.tolerance << std::defaultfloat << "\n"
     << "seed      " << r.seed << "\n";
  if (r.borodin) {
    os << "\ntail-sum condition: " << (r.borodin->passes ? "holds" : "fails");
    if (r.borodin->n0) os << " from n0 = " << *r.borodin->n0;
    os << "\n";
    os << std::setw(5) << "n" << std::setw(16) << "margin" << "\n";
    for (std::size_t i = 0; i < r.borodin->margins.size(); ++i) {
      os << std::setw(5) << i + 1 << std::setw(16) << std::setprecision(6) << r.borodin->margins[i] << "\n";
    }
    if (r.borodin->tail_factor) os << "  tail factor 1 - r/(1-r) = " << *r.borodin->tail_factor << "\n";
  }
  if (r.subspace) {
    os << "\nsubspace condition (k = " << r.subspace->k << ", " << r.subspace->samples << " samples): "
       << (r.subspace->no_counterexample ? "no counterexample (sampled)" : "counterexample found") << "\n";
  }
  if (!r.levels.empty()) {
    os << "\n" << std::setw(5) << "k" << std::setw(16) << "d_k" << std::setw(16) << "rho(x,Y_k)" << std::setw(14)
       << "residual" << "\n";
    for (const LevelRow& l : r.levels) {
      os << std::setw(5) << l.k << std::setw(16) << std::setprecision(8) << l.target << std::setw(16) << l.achieved
         << std::setw(14) << std::setprecision(2) << l.residual;
      if (r.first_failing_level && *r.first_failing_level == l.k) os << "  <-- first failure";
      os << "\n";
    }
  }
  if (r.norm_x) {
    os << "\n||x|| = " << std::setprecision(8) << *r.norm_x;
    if (r.norm_limit) os << "  (limit d_1 + 1 + tol = " << *r.norm_limit << ")";
    os << "\n";
  }
  if (!r.coefficients.empty()) {
    os << "\n" << std::setw(5) << "k" << std::setw(16) << "lambda_k" << std::setw(16) << "bound" << "\n";
    for (const CoefficientRow& c : r.coefficients) {
      os << std::setw(5) << c.k << std::setw(16) << std::setprecision(8) << c.lambda;
      if (c.bound) os << std::setw(16) << *c.bound << (c.holds && *c.holds ? "" : "  violated");
      os << "\n";
    }
  }
  if (r.stabilization) {
    const Stabilization& s = *r.stabilization;
    os << "\n||x_N - x_M||\n" << std::setw(5) << "N\\M";
    for (std::size_t m = 0; m < s.differences.size(); ++m) os << std::setw(11) << m + 1;
    os << "\n";
    for (std::size_t n = 0; n < s.differences.size(); ++n) {
      os << std::setw(5) << n + 1;
      for (const auto& v : s.differences[n]) {
        if (v) {
          os << std::setw(11) << std::setprecision(2) << *v;
        } else {
          os << std::setw(11) << "-";
        }
      }
      os << "\n";
    }
    os << "\n" << std::setw(5) << "N" << std::setw(16) << "max_{M>N}" << std::setw(16) << "tail bound" << "\n";
    for (std::size_t n = 0; n < s.max_later.size(); ++n) {
      os << std::setw(5) << n + 1 << std::setw(16) << std::setprecision(6) << s.max_later[n] << std::setw(16)
         << s.tail_bound[n] << (s.max_later[n] <= s.tail_bound[n] + r.tolerance ? "" : "  exceeds") << "\n";
    }
    os << "non-increasing: " << (s.non_increasing ? "yes" : "no")
       << ", below tail bound: " << (s.below_tail_bound ? "yes" : "no") << "\n";
  }
  if (!r.messages.empty()) {
    os << "\n";
    for (const std::string& m : r.messages) os << "- " << m << "\n";
  }
  if (r.wall_time_ms) os << "\nwall time " << std::fixed << std::setprecision(1) << *r.wall_time_ms << " ms\n";
  os << "\nverdict: " << to_string(r.verdict) << "\n";
  return os.str();
}

}  // namespace lethargy

#endif  // LETHARGY_SCENARIO_HPP
