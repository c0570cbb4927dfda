#include "besovlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "besovlab/error.hpp"

namespace besovlab {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

Json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

Json optional_number(const std::optional<double>& x) {
  return x ? finite_or_string(*x) : Json(nullptr);
}

}  // namespace

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(child(path, key), "missing field");
  return *it;
}

double number_at(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_number()) throw ConfigError(child(path, key), "expected a number");
  return v.get<double>();
}

double number_or(const Json& j, const std::string& key, const std::string& path, double fallback) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j.contains(key) ? number_at(j, key, path) : fallback;
}

long long integer_at(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_number_integer()) throw ConfigError(child(path, key), "expected an integer");
  return v.get<long long>();
}

long long integer_or(const Json& j, const std::string& key, const std::string& path,
                     long long fallback) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j.contains(key) ? integer_at(j, key, path) : fallback;
}

std::string string_or(const Json& j, const std::string& key, const std::string& path,
                      const std::string& fallback) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(child(path, key), "expected a string");
  return v.get<std::string>();
}

SlabDistribution slab_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) return slab_from_json(Json{{"kind", j}}, path);
  const std::string kind = string_or(j, "kind", path, "");
  SlabDistribution d;
  if (kind == "gaussian") {
    d = Gaussian{number_or(j, "sigma", path, 1.0)};
  } else if (kind == "laplace") {
    d = Laplace{number_or(j, "lambda", path, 1.0)};
  } else if (kind == "student_t") {
    d = StudentT{number_or(j, "nu", path, 3.0)};
  } else if (kind == "cauchy") {
    d = Cauchy{};
  } else if (kind == "power_exponential") {
    d = PowerExponential{number_or(j, "m", path, 2.0), number_or(j, "lambda", path, 1.0)};
  } else {
    throw ConfigError(child(path, "kind"),
                      "expected gaussian, laplace, student_t, cauchy or power_exponential");
  }
  try {
    validate(d);
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return d;
}

Json slab_to_json(const SlabDistribution& d) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Gaussian>) return {{"kind", "gaussian"}, {"sigma", x.sigma}};
        if constexpr (std::is_same_v<T, Laplace>) return {{"kind", "laplace"}, {"lambda", x.lambda}};
        if constexpr (std::is_same_v<T, StudentT>) return {{"kind", "student_t"}, {"nu", x.nu}};
        if constexpr (std::is_same_v<T, Cauchy>) return {{"kind", "cauchy"}};
        if constexpr (std::is_same_v<T, PowerExponential>) {
          return {{"kind", "power_exponential"}, {"m", x.m}, {"lambda", x.lambda}};
        }
      },
      d);
}

LevelSchedule schedule_from_json(const Json& j, const std::string& path) {
  LevelSchedule s{number_or(j, "c", path, 1.0), number_at(j, "e", path), number_or(j, "g", path, 0.0)};
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return s;
}

Json schedule_to_json(const LevelSchedule& s) { return {{"c", s.c}, {"e", s.e}, {"g", s.g}}; }

ExtendedIndex index_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto v = j.get<std::string>();
    if (v == "inf" || v == "infinity") return ExtendedIndex::infinity();
    throw ConfigError(path, "expected a number >= 1 or \"inf\"");
  }
  if (!j.is_number()) throw ConfigError(path, "expected a number >= 1 or \"inf\"");
  try {
    return ExtendedIndex::finite(j.get<double>());
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

Json index_to_json(const ExtendedIndex& x) {
  if (x.is_infinite()) return "inf";
  return x.value();
}

BesovParams besov_from_json(const Json& j, const std::string& path) {
  BesovParams bp;
  bp.s = number_at(j, "s", path);
  bp.p = index_from_json(require(j, "p", path), child(path, "p"));
  bp.q = index_from_json(require(j, "q", path), child(path, "q"));
  try {
    bp.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return bp;
}

Json besov_to_json(const BesovParams& bp) {
  return {{"s", bp.s}, {"p", index_to_json(bp.p)}, {"q", index_to_json(bp.q)}};
}

PriorSpec prior_from_json(const Json& j, const std::string& path) {
  PriorSpec spec;
  spec.tau = schedule_from_json(require(j, "tau", path), child(path, "tau"));
  spec.pi = schedule_from_json(require(j, "pi", path), child(path, "pi"));
  if (j.contains("slab")) spec.slab = slab_from_json(j.at("slab"), child(path, "slab"));
  if (j.contains("mode")) {
    const std::string mp = child(path, "mode");
    const Json& m = j.at("mode");
    const std::string kind = string_or(m, "kind", mp, "infinite");
    if (kind == "infinite") {
      const long long J = integer_or(m, "J", mp, 10);
      if (J < 0 || J > 30) throw ConfigError(child(mp, "J"), "expected 0 <= J <= 30");
      spec.mode = InfiniteMode{static_cast<int>(J)};
    } else if (kind == "regression") {
      const long long n = integer_at(m, "n", mp);
      if (n < 4) throw ConfigError(child(mp, "n"), "expected n >= 4");
      spec.mode = RegressionMode{static_cast<std::uint64_t>(n)};
    } else {
      throw ConfigError(child(mp, "kind"), "expected infinite or regression");
    }
  }
  return spec;
}

Json prior_to_json(const PriorSpec& spec) {
  Json mode;
  if (const auto* im = std::get_if<InfiniteMode>(&spec.mode)) {
    mode = {{"kind", "infinite"}, {"J", im->J}};
  } else {
    mode = {{"kind", "regression"}, {"n", std::get<RegressionMode>(spec.mode).n}};
  }
  return {{"tau", schedule_to_json(spec.tau)},
          {"pi", schedule_to_json(spec.pi)},
          {"slab", slab_to_json(spec.slab)},
          {"mode", mode}};
}

LevelRange levels_from_json(const Json& j, const std::string& path, LevelRange fallback) {
  LevelRange r{static_cast<int>(integer_or(j, "lo", path, fallback.lo)),
               static_cast<int>(integer_or(j, "hi", path, fallback.hi))};
  try {
    r.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return r;
}

Json levels_to_json(const LevelRange& r) { return {{"lo", r.lo}, {"hi", r.hi}}; }

Json tree_to_json(const CoefficientTree& t) {
  Json levels = Json::array();
  for (const Level& lv : t.levels) {
    Json entries = Json::array();
    for (const Entry& e : lv.entries) entries.push_back(Json::array({e.k, e.w}));
    levels.push_back({{"j", lv.j}, {"entries", std::move(entries)}});
  }
  return {{"j0", t.j0}, {"scaling", t.scaling}, {"levels", std::move(levels)}};
}

CoefficientTree tree_from_json(const Json& j, const std::string& path) {
  CoefficientTree t;
  t.j0 = static_cast<int>(integer_at(j, "j0", path));
  const Json& sc = require(j, "scaling", path);
  if (!sc.is_array()) throw ConfigError(child(path, "scaling"), "expected an array");
  for (std::size_t i = 0; i < sc.size(); ++i) {
    if (!sc[i].is_number()) throw ConfigError(child(path, "scaling/" + std::to_string(i)), "expected a number");
    t.scaling.push_back(sc[i].get<double>());
  }
  const Json& lvs = require(j, "levels", path);
  if (!lvs.is_array()) throw ConfigError(child(path, "levels"), "expected an array");
  for (std::size_t i = 0; i < lvs.size(); ++i) {
    const std::string lp = child(path, "levels/" + std::to_string(i));
    Level lv;
    lv.j = static_cast<int>(integer_at(lvs[i], "j", lp));
    const Json& es = require(lvs[i], "entries", lp);
    if (!es.is_array()) throw ConfigError(child(lp, "entries"), "expected an array");
    for (std::size_t e = 0; e < es.size(); ++e) {
      const Json& pair = es[e];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number()) {
        throw ConfigError(child(lp, "entries/" + std::to_string(e)), "expected [k, w]");
      }
      lv.entries.push_back(Entry{pair[0].get<std::int64_t>(), pair[1].get<double>()});
    }
    t.levels.push_back(std::move(lv));
  }
  try {
    t.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path.empty() ? "/" : path, e.what());
  }
  return t;
}

void write_tree_csv(std::ostream& os, const CoefficientTree& t) {
  os << "j,k,w\n";
  for (const Level& lv : t.levels) {
    for (const Entry& e : lv.entries) os << lv.j << ',' << e.k << ',' << format_double(e.w) << '\n';
  }
}

void write_level_terms_csv(std::ostream& os, const CoefficientTree& t, const BesovParams& bp) {
  const std::vector<double> terms = level_terms(t, bp);
  os << "j,a_j\n";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    os << t.levels[i].j << ',' << format_double(terms[i]) << '\n';
  }
}

Json verdict_to_json(const Verdict& v) {
  return {{"decision", decision_name(v.decision)},
          {"case_id", v.case_id},
          {"threshold", optional_number(v.threshold)},
          {"reason", v.reason},
          {"assumptions", v.assumptions}};
}

Json report_to_json(const ExperimentReport& r) {
  Json levels = Json::array();
  for (const LevelStat& st : r.levels) {
    levels.push_back({{"j", st.j},
                      {"reps", st.reps},
                      {"mean", finite_or_string(st.mean)},
                      {"stderr", finite_or_string(st.stderr_of_mean)},
                      {"median", finite_or_string(st.median)},
                      {"iqr", finite_or_string(st.iqr)},
                      {"expected_count", st.expected_count},
                      {"reference", optional_number(st.reference)}});
  }
  Json out = {{"kind", r.kind},
              {"seed", r.seed},
              {"reps", r.reps},
              {"levels", std::move(levels)},
              {"predicted_slope", optional_number(r.predicted_slope)},
              {"dropped_fraction", r.dropped_fraction},
              {"degenerate", r.degenerate},
              {"top_level_empty_fraction", r.top_level_empty_fraction},
              {"notes", r.notes}};
  out["slope"] = r.slope ? Json{{"mean", r.slope->mean},
                                {"stderr", r.slope->stderr_of_mean},
                                {"sd", r.slope->sd},
                                {"n", r.slope->n}}
                         : Json(nullptr);
  out["empirical"] = r.empirical ? Json(empirical_name(*r.empirical)) : Json(nullptr);
  out["theory"] = r.theory ? verdict_to_json(*r.theory) : Json(nullptr);
  out["agrees"] = r.agrees ? Json(*r.agrees) : Json(nullptr);
  return out;
}

void write_report_csv(std::ostream& os, const ExperimentReport& r) {
  os << "j,reps,mean,stderr,median,iqr,expected_count,reference\n";
  for (const LevelStat& st : r.levels) {
    os << st.j << ',' << st.reps << ',' << format_double(st.mean) << ','
       << format_double(st.stderr_of_mean) << ',' << format_double(st.median) << ','
       << format_double(st.iqr) << ',' << format_double(st.expected_count) << ','
       << (st.reference ? format_double(*st.reference) : "") << '\n';
  }
}

CwtSpec cwt_spec_from_json(const Json& j, const std::string& path) {
  CwtSpec s;
  s.c_mu = number_or(j, "c_mu", path, s.c_mu);
  s.beta = number_or(j, "beta", path, s.beta);
  s.c_tau = number_or(j, "c_tau", path, s.c_tau);
  s.alpha = number_or(j, "alpha", path, s.alpha);
  s.a0 = number_or(j, "a0", path, s.a0);
  s.a_max = number_or(j, "a_max", path, s.a_max);
  if (j.contains("slab")) s.slab = slab_from_json(j.at("slab"), child(path, "slab"));
  if (j.contains("coarse")) {
    const Json& cs = j.at("coarse");
    if (!cs.is_array()) throw ConfigError(child(path, "coarse"), "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string cp = child(path, "coarse/" + std::to_string(i));
      s.coarse.push_back(CoarseTerm{number_at(cs[i], "eta", cp), number_at(cs[i], "a", cp),
                                    number_at(cs[i], "b", cp)});
    }
  }
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return s;
}

Json cwt_spec_to_json(const CwtSpec& spec) {
  Json coarse = Json::array();
  for (const CoarseTerm& c : spec.coarse) coarse.push_back({{"eta", c.eta}, {"a", c.a}, {"b", c.b}});
  return {{"c_mu", spec.c_mu}, {"beta", spec.beta}, {"c_tau", spec.c_tau},
          {"alpha", spec.alpha}, {"a0", spec.a0},   {"a_max", spec.a_max},
          {"slab", slab_to_json(spec.slab)},        {"coarse", std::move(coarse)}};
}

void write_atoms_csv(std::ostream& os, const std::vector<PoissonAtom>& atoms) {
  os << "a,b,omega\n";
  for (const PoissonAtom& at : atoms) {
    os << format_double(at.a) << ',' << format_double(at.b) << ',' << format_double(at.omega) << '\n';
  }
}

Json kernel_report_to_json(const KernelBoundReport& r) {
  return {{"u", r.u},
          {"sup_abs", r.sup_abs},
          {"exponent", r.exponent},
          {"slope_large", r.slope_large},
          {"slope_small", r.slope_small},
          {"c_k0", r.c_k0},
          {"c_k1", r.c_k1}};
}

Json moment_report_to_json(const MomentReport& r) {
  Json levels = Json::array();
  for (const MomentLevel& m : r.levels) {
    levels.push_back({{"j", m.j},
                      {"mean", m.mean},
                      {"stderr", m.stderr_of_mean},
                      {"predicted_shape", m.predicted_shape}});
  }
  return {{"levels", std::move(levels)},
          {"reps", r.reps},
          {"m", r.m},
          {"slope", r.fit.slope},
          {"slope_stderr", r.fit.slope_stderr},
          {"predicted_slope", r.predicted_slope},
          {"mean_atom_count", r.mean_atom_count}};
}

}  // namespace besovlab
