#include "cli.hpp"

#include <cmath>
#include <sstream>

#include <besovlab/error.hpp>
#include <besovlab/wavelets.hpp>

namespace besovlab::cli {

namespace {

const std::string root = "";

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

std::uint64_t seed_of(const Json& c) {
  const long long s = integer_or(c, "seed", root, 1);
  if (s < 0) throw ConfigError("/seed", "expected a non-negative integer");
  return static_cast<std::uint64_t>(s);
}

std::size_t count_or(const Json& c, const std::string& key, long long fallback, long long min) {
  const long long v = integer_or(c, key, root, fallback);
  if (v < min) throw ConfigError("/" + key, "expected an integer >= " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

const Json& object_or_empty(const Json& c, const std::string& key) {
  static const Json empty = Json::object();
  return c.contains(key) ? c.at(key) : empty;
}

SlabDistribution slab_or_default(const Json& c) {
  return c.contains("slab") ? slab_from_json(c.at("slab"), "/slab") : SlabDistribution{Gaussian{}};
}

WaveletFamily wavelet_of(const Json& c, const std::string& path, const std::string& fallback) {
  const std::string name = string_or(c, "wavelet", path, fallback);
  try {
    return wavelet_by_name(name);
  } catch (const DomainError& e) {
    throw ConfigError(child(path, "wavelet"), e.what());
  }
}

// ---- classify / sweep

struct ClassifySetup {
  std::string mode;
  SlabDistribution slab;
  double alpha = 0.0, beta = 0.0, gamma = 0.0, r = 16.0, rho = 0.0;
  LevelSchedule tau, pi, mu;
  std::string wavelet;
  Json resolved;
};

ClassifySetup classify_setup(const Json& c) {
  ClassifySetup k;
  k.mode = string_or(c, "mode", root, "simple");
  k.slab = slab_or_default(c);
  Json& out = k.resolved;
  out["mode"] = k.mode;
  out["slab"] = slab_to_json(k.slab);
  const bool cwt = k.mode == "cwt" || k.mode == "cwt_general";
  if (cwt) {
    const WaveletFamily f = wavelet_of(c, root, "db4");
    k.wavelet = f.name();
    k.r = number_or(c, "r", root, f.vanishing_moments);
    k.rho = number_or(c, "rho", root, f.holder);
    out["wavelet"] = k.wavelet;
    out["rho"] = k.rho;
  } else {
    k.r = number_or(c, "r", root, 16.0);
  }
  out["r"] = k.r;
  if (k.mode == "simple" || k.mode == "three_param" || k.mode == "cwt") {
    k.alpha = number_at(c, "alpha", root);
    k.beta = number_at(c, "beta", root);
    out["alpha"] = k.alpha;
    out["beta"] = k.beta;
    if (k.mode == "three_param") {
      k.gamma = number_or(c, "gamma", root, 0.0);
      out["gamma"] = k.gamma;
    }
  } else if (k.mode == "general" || k.mode == "regression") {
    k.tau = schedule_from_json(require(c, "tau", root), "/tau");
    k.pi = schedule_from_json(require(c, "pi", root), "/pi");
    out["tau"] = schedule_to_json(k.tau);
    out["pi"] = schedule_to_json(k.pi);
  } else if (k.mode == "no_spike") {
    k.tau = schedule_from_json(require(c, "tau", root), "/tau");
    out["tau"] = schedule_to_json(k.tau);
  } else if (k.mode == "cwt_general") {
    k.tau = schedule_from_json(require(c, "tau", root), "/tau");
    k.mu = schedule_from_json(require(c, "mu", root), "/mu");
    out["tau"] = schedule_to_json(k.tau);
    out["mu"] = schedule_to_json(k.mu);
  } else {
    throw ConfigError("/mode",
                      "expected simple, general, three_param, regression, no_spike, cwt or cwt_general");
  }
  return k;
}

Verdict classify_point(const ClassifySetup& k, const BesovParams& bp) {
  if (k.mode == "simple") return classify_simple(k.slab, k.alpha, k.beta, bp, k.r);
  if (k.mode == "general") return classify_general(k.slab, k.tau, k.pi, bp, k.r);
  if (k.mode == "three_param") {
    if (!bp.p.is_infinite()) {
      Verdict v;
      v.case_id = "three_param";
      v.reason = "the three-parameter model is stated for p = inf only";
      return v;
    }
    return classify_three_param(k.slab, k.alpha, k.beta, k.gamma, bp.s, bp.q, k.r);
  }
  if (k.mode == "regression") return classify_regression(k.slab, k.tau, k.pi, bp, k.r);
  if (k.mode == "no_spike") return no_spike_condition(k.slab, k.tau, bp, k.r);
  if (k.mode == "cwt") return classify_cwt(k.slab, k.alpha, k.beta, bp, k.r, k.rho);
  return classify_cwt_general(k.slab, k.tau, k.mu, bp, k.r, k.rho);
}

// s >= r and similar domain failures are answers here, not usage errors.
Verdict classify_or_uncovered(const ClassifySetup& k, const BesovParams& bp) {
  try {
    return classify_point(k, bp);
  } catch (const DomainError& e) {
    Verdict v;
    v.case_id = k.mode + ".domain";
    v.reason = e.what();
    return v;
  }
}

RunResult run_classify(const Json& c, bool strict) {
  ClassifySetup k = classify_setup(c);
  RunResult res;
  bool any_uncovered = false;
  std::ostringstream csv;
  csv << "s,p,q,decision,case_id,threshold\n";
  auto emit = [&](const BesovParams& bp, const Verdict& v) {
    any_uncovered = any_uncovered || !is_covered(v.decision);
    csv << format_double(bp.s) << ',' << bp.p.str() << ',' << bp.q.str() << ','
        << decision_name(v.decision) << ',' << v.case_id << ','
        << (v.threshold ? format_double(*v.threshold) : "") << '\n';
  };
  if (c.contains("points")) {
    const Json& pts = c.at("points");
    if (!pts.is_array()) throw ConfigError("/points", "expected an array");
    Json resolved_pts = Json::array();
    Json verdicts = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const BesovParams bp = besov_from_json(pts[i], "/points/" + std::to_string(i));
      const Verdict v = classify_or_uncovered(k, bp);
      emit(bp, v);
      resolved_pts.push_back(besov_to_json(bp));
      Json vj = verdict_to_json(v);
      vj["besov"] = besov_to_json(bp);
      verdicts.push_back(std::move(vj));
    }
    k.resolved["points"] = std::move(resolved_pts);
    res.report["verdicts"] = std::move(verdicts);
  } else {
    const BesovParams bp = besov_from_json(require(c, "besov", root), "/besov");
    const Verdict v = classify_or_uncovered(k, bp);
    emit(bp, v);
    k.resolved["besov"] = besov_to_json(bp);
    res.report["verdict"] = verdict_to_json(v);
  }
  res.report["config"] = k.resolved;
  res.csv = csv.str();
  if (strict && any_uncovered) res.exit_code = not_covered;
  return res;
}

std::vector<double> s_grid(const Json& g, const std::string& path) {
  if (g.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g[i].is_number()) throw ConfigError(child(path, std::to_string(i)), "expected a number");
      out.push_back(g[i].get<double>());
    }
    return out;
  }
  const double lo = number_at(g, "lo", path);
  const double hi = number_at(g, "hi", path);
  const long long n = integer_at(g, "n", path);
  if (n < 1 || n > 100000) throw ConfigError(child(path, "n"), "expected 1 <= n <= 100000");
  if (n > 1 && !(hi > lo)) throw ConfigError(child(path, "hi"), "expected hi > lo");
  std::vector<double> out;
  for (long long i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

std::vector<ExtendedIndex> index_grid(const Json& g, const std::string& path) {
  if (!g.is_array()) throw ConfigError(path, "expected an array");
  std::vector<ExtendedIndex> out;
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(index_from_json(g[i], child(path, std::to_string(i))));
  return out;
}

RunResult run_sweep(const Json& c, bool strict) {
  ClassifySetup k = classify_setup(c);
  const Json& g = object_or_empty(c, "grid");
  const Json s_spec = g.contains("s") ? g.at("s") : Json{{"lo", 0.0}, {"hi", 3.0}, {"n", 31}};
  const Json p_spec = g.contains("p") ? g.at("p") : Json::array({1, 2, "inf"});
  const Json q_spec = g.contains("q") ? g.at("q") : Json::array({1, 2, "inf"});
  const std::vector<double> ss = s_grid(s_spec, "/grid/s");
  const std::vector<ExtendedIndex> ps = index_grid(p_spec, "/grid/p");
  const std::vector<ExtendedIndex> qs = index_grid(q_spec, "/grid/q");
  k.resolved["grid"] = {{"s", s_spec}, {"p", p_spec}, {"q", q_spec}};

  std::ostringstream csv;
  csv << "s,p,q,decision,case_id,threshold\n";
  Json counts = Json::object();
  bool any_uncovered = false;
  for (const ExtendedIndex& p : ps) {
    for (const ExtendedIndex& q : qs) {
      for (double s : ss) {
        BesovParams bp{s, p, q};
        const Verdict v = classify_or_uncovered(k, bp);
        any_uncovered = any_uncovered || !is_covered(v.decision);
        const std::string name = decision_name(v.decision);
        counts[name] = counts.value(name, 0) + 1;
        csv << format_double(s) << ',' << p.str() << ',' << q.str() << ',' << name << ','
            << v.case_id << ',' << (v.threshold ? format_double(*v.threshold) : "") << '\n';
      }
    }
  }
  RunResult res;
  res.report["config"] = k.resolved;
  res.report["points"] = ss.size() * ps.size() * qs.size();
  res.report["counts"] = counts;
  res.csv = csv.str();
  if (strict && any_uncovered) res.exit_code = not_covered;
  return res;
}

// ---- sampling and norms

PriorSpec prior_of(const Json& c) { return prior_from_json(require(c, "prior", root), "/prior"); }

std::vector<double> scaling_of(const Json& c, int j0) {
  std::vector<double> out;
  if (c.contains("scaling")) {
    const Json& sc = c.at("scaling");
    if (!sc.is_array()) throw ConfigError("/scaling", "expected an array");
    for (std::size_t i = 0; i < sc.size(); ++i) {
      if (!sc[i].is_number()) throw ConfigError("/scaling/" + std::to_string(i), "expected a number");
      out.push_back(sc[i].get<double>());
    }
    if (out.size() != (std::size_t{1} << j0)) throw ConfigError("/scaling", "expected 2^j0 values");
  } else {
    out.assign(std::size_t{1} << j0, 0.0);
  }
  return out;
}

int j0_of(const Json& c, const PriorSpec& spec) {
  const long long j0 = integer_or(c, "j0", root, 0);
  if (j0 < 0 || j0 > spec.top_level() + 1 || j0 > 24) throw ConfigError("/j0", "expected 0 <= j0 <= J + 1");
  return static_cast<int>(j0);
}

RunResult run_sample(const Json& c, unsigned threads) {
  const PriorSpec spec = prior_of(c);
  const int j0 = j0_of(c, spec);
  const std::vector<double> scaling = scaling_of(c, j0);
  const std::uint64_t seed = seed_of(c);
  const auto replicate = count_or(c, "replicate", 0, 0);
  const CoefficientTree t = sample_tree(spec, j0, scaling, seed, replicate, threads);
  RunResult res;
  res.report["config"] = {{"prior", prior_to_json(spec)}, {"j0", j0},     {"scaling", scaling},
                          {"seed", seed},                 {"replicate", replicate}};
  res.report["nonzero"] = total_nonzero(t);
  res.report["tree"] = tree_to_json(t);
  std::ostringstream csv;
  write_tree_csv(csv, t);
  res.csv = csv.str();
  return res;
}

RunResult run_norm(const Json& c) {
  const BesovParams bp = besov_from_json(require(c, "besov", root), "/besov");
  const Json& tj = require(c, "tree", root);
  // a whole `sample` report is accepted as well as a bare tree
  const bool wrapped = tj.is_object() && tj.contains("tree") && !tj.contains("j0");
  const CoefficientTree t = tree_from_json(wrapped ? tj.at("tree") : tj, wrapped ? "/tree/tree" : "/tree");
  RunResult res;
  Json cfg = {{"besov", besov_to_json(bp)}};
  if (c.contains("tree_file")) cfg["tree_file"] = c.at("tree_file");
  else cfg["tree"] = tree_to_json(t);
  res.report["config"] = cfg;
  res.report["norm"] = besov_seq_norm(t, bp);
  res.report["scaling_norm"] = vector_p_norm(t.scaling, bp.p);
  res.report["tail"] = tail_functional(level_terms(t, bp), bp.q);
  std::ostringstream csv;
  write_level_terms_csv(csv, t, bp);
  res.csv = csv.str();
  return res;
}

// ---- experiments

RunResult run_verify(const Json& c, unsigned threads, bool strict) {
  const PriorSpec spec = prior_of(c);
  const BesovParams bp = besov_from_json(require(c, "besov", root), "/besov");
  const LevelRange levels = levels_from_json(object_or_empty(c, "levels"), "/levels", LevelRange{8, 18});
  const std::size_t reps = count_or(c, "reps", 100, 2);
  const std::uint64_t seed = seed_of(c);
  const double r = number_or(c, "r", root, 16.0);
  const ExperimentReport rep = empirical_membership(spec, bp, levels, reps, seed, threads, r);
  RunResult res;
  res.report["config"] = {{"prior", prior_to_json(spec)}, {"besov", besov_to_json(bp)},
                          {"levels", levels_to_json(levels)}, {"reps", reps},
                          {"seed", seed}, {"r", r}};
  res.report["report"] = report_to_json(rep);
  std::ostringstream csv;
  write_report_csv(csv, rep);
  res.csv = csv.str();
  if (strict && rep.theory && !is_covered(rep.theory->decision)) res.exit_code = not_covered;
  return res;
}

RunResult run_lln(const Json& c, unsigned threads) {
  const SlabDistribution slab = slab_or_default(c);
  const LevelSchedule pi = c.contains("pi") ? schedule_from_json(c.at("pi"), "/pi") : LevelSchedule{1.0, 0.5, 0.0};
  const double m = number_or(c, "m", root, 2.0);
  const LevelRange levels = levels_from_json(object_or_empty(c, "levels"), "/levels", LevelRange{8, 18});
  const std::size_t reps = count_or(c, "reps", 50, 2);
  const std::uint64_t seed = seed_of(c);
  const ExperimentReport rep = lln_experiment(slab, pi, m, levels, reps, seed, threads);
  RunResult res;
  res.report["config"] = {{"slab", slab_to_json(slab)}, {"pi", schedule_to_json(pi)}, {"m", m},
                          {"levels", levels_to_json(levels)}, {"reps", reps}, {"seed", seed}};
  res.report["report"] = report_to_json(rep);
  std::ostringstream csv;
  write_report_csv(csv, rep);
  res.csv = csv.str();
  return res;
}

RunResult run_evt(const Json& c, unsigned threads) {
  const SlabDistribution slab = slab_or_default(c);
  const LevelSchedule pi = c.contains("pi") ? schedule_from_json(c.at("pi"), "/pi") : LevelSchedule{1.0, 0.0, 0.0};
  const LevelRange levels = levels_from_json(object_or_empty(c, "levels"), "/levels", LevelRange{8, 16});
  const std::size_t reps = count_or(c, "reps", 100, 2);
  const std::uint64_t seed = seed_of(c);
  const ExperimentReport rep = evt_experiment(slab, pi, levels, reps, seed, threads);
  RunResult res;
  res.report["config"] = {{"slab", slab_to_json(slab)}, {"pi", schedule_to_json(pi)},
                          {"levels", levels_to_json(levels)}, {"reps", reps}, {"seed", seed}};
  res.report["report"] = report_to_json(rep);
  std::ostringstream csv;
  write_report_csv(csv, rep);
  res.csv = csv.str();
  return res;
}

RunResult run_synth(const Json& c, unsigned threads) {
  const PriorSpec spec = prior_of(c);
  const int j0 = j0_of(c, spec);
  const std::vector<double> scaling = scaling_of(c, j0);
  const WaveletFamily f = wavelet_of(c, root, "db4");
  const long long G = integer_or(c, "G", root, spec.top_level() + 2);
  if (G < spec.top_level() + 2 || G > 24) throw ConfigError("/G", "expected J + 2 <= G <= 24");
  const std::uint64_t seed = seed_of(c);
  const auto replicate = count_or(c, "replicate", 0, 0);
  const CoefficientTree t = sample_tree(spec, j0, scaling, seed, replicate, threads);
  const std::vector<double> fx = synthesize(t, f, static_cast<int>(G), threads);
  std::ostringstream csv;
  csv << "x,f\n";
  double sup = 0.0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    csv << format_double(std::ldexp(static_cast<double>(i), -static_cast<int>(G))) << ',' << format_double(fx[i]) << '\n';
    sup = std::max(sup, std::abs(fx[i]));
  }
  RunResult res;
  res.report["config"] = {{"prior", prior_to_json(spec)}, {"j0", j0}, {"scaling", scaling},
                          {"wavelet", f.name()}, {"G", G}, {"seed", seed}, {"replicate", replicate}};
  res.report["points"] = fx.size();
  res.report["sup_abs"] = sup;
  res.report["nonzero"] = total_nonzero(t);
  res.csv = csv.str();
  return res;
}

CwtSpec cwt_of(const Json& c) {
  return cwt_spec_from_json(object_or_empty(c, "cwt"), "/cwt");
}

RunResult run_cwt_sample(const Json& c, unsigned threads) {
  const CwtSpec spec = cwt_of(c);
  const std::uint64_t seed = seed_of(c);
  const auto replicate = count_or(c, "replicate", 0, 0);
  const std::vector<PoissonAtom> atoms = sample_atoms(spec, seed, replicate);
  RunResult res;
  Json cfg = {{"cwt", cwt_spec_to_json(spec)}, {"seed", seed}, {"replicate", replicate}};
  res.report["atom_count"] = atoms.size();
  res.report["intensity_mass"] = intensity_mass(spec);
  if (c.contains("project")) {
    const Json& pj = c.at("project");
    const WaveletFamily f = wavelet_of(pj, "/project", "db4");
    const long long j0 = integer_or(pj, "j0", "/project", static_cast<long long>(std::floor(std::log2(spec.a0))));
    const long long J = integer_or(pj, "J", "/project", j0 + 6);
    if (j0 < 0 || J < j0 || J > 20) throw ConfigError("/project/J", "expected 0 <= j0 <= J <= 20");
    const KernelEvaluator kernel(f);
    const CoefficientTree t = project_to_orthogonal(atoms, kernel, static_cast<int>(j0), static_cast<int>(J),
                                                    spec.coarse, threads);
    cfg["project"] = {{"wavelet", f.name()}, {"j0", j0}, {"J", J}};
    res.report["tree"] = tree_to_json(t);
  }
  res.report["config"] = cfg;
  std::ostringstream csv;
  write_atoms_csv(csv, atoms);
  res.csv = csv.str();
  return res;
}

RunResult run_cwt_verify(const Json& c, unsigned threads) {
  const CwtSpec spec = cwt_of(c);
  const WaveletFamily f = wavelet_of(c, root, "db4");
  const Json& ue = object_or_empty(c, "u_exponents");
  const long long u_lo = integer_or(ue, "lo", "/u_exponents", -6);
  const long long u_hi = integer_or(ue, "hi", "/u_exponents", 6);
  if (u_hi < u_lo || u_lo < -20 || u_hi > 20) throw ConfigError("/u_exponents", "expected -20 <= lo <= hi <= 20");
  const long long v_points = integer_or(c, "v_points", root, 200);
  if (v_points < 2) throw ConfigError("/v_points", "expected an integer >= 2");
  const double m = number_or(c, "m", root, 2.0);
  const LevelRange levels = levels_from_json(object_or_empty(c, "levels"), "/levels", LevelRange{4, 10});
  const std::size_t reps = count_or(c, "reps", 200, 2);
  const std::uint64_t seed = seed_of(c);

  const KernelEvaluator kernel(f);
  std::vector<double> us;
  for (long long a = u_lo; a <= u_hi; ++a) us.push_back(std::ldexp(1.0, static_cast<int>(a)));
  const KernelBoundReport kb = verify_kernel_bounds(kernel, us, static_cast<int>(v_points), threads);
  const MomentReport mr = moment_bound_experiment(spec, kernel, m, levels.lo, levels.hi, reps, seed, threads);

  RunResult res;
  res.report["config"] = {{"cwt", cwt_spec_to_json(spec)}, {"wavelet", f.name()},
                          {"u_exponents", {{"lo", u_lo}, {"hi", u_hi}}}, {"v_points", v_points},
                          {"m", m}, {"levels", levels_to_json(levels)}, {"reps", reps}, {"seed", seed}};
  res.report["kernel"] = kernel_report_to_json(kb);
  res.report["moments"] = moment_report_to_json(mr);
  std::ostringstream csv;
  csv << "j,mean,stderr,predicted_shape\n";
  for (const MomentLevel& l : mr.levels) {
    csv << l.j << ',' << format_double(l.mean) << ',' << format_double(l.stderr_of_mean) << ','
        << format_double(l.predicted_shape) << '\n';
  }
  res.csv = csv.str();
  return res;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"classify", "sweep", "sample", "norm", "verify",
                                                 "lln",      "evt",   "synth",  "cwt-sample",
                                                 "cwt-verify"};
  return names;
}

void apply_override(Json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set", "expected path=value, got '" + assignment + "'");
  std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  if (path.front() != '/') {
    for (char& ch : path) {
      if (ch == '.') ch = '/';
    }
    path.insert(path.begin(), '/');
  }
  Json value = Json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  try {
    config[Json::json_pointer(path)] = std::move(value);
  } catch (const Json::exception& e) {
    throw ConfigError(path, e.what());
  }
}

RunResult run(const std::string& command, const Json& config, unsigned threads, bool strict) {
  if (!config.is_object()) throw ConfigError("/", "expected a JSON object");
  if (threads == 0) threads = 1;
  RunResult res;
  if (command == "classify") res = run_classify(config, strict);
  else if (command == "sweep") res = run_sweep(config, strict);
  else if (command == "sample") res = run_sample(config, threads);
  else if (command == "norm") res = run_norm(config);
  else if (command == "verify") res = run_verify(config, threads, strict);
  else if (command == "lln") res = run_lln(config, threads);
  else if (command == "evt") res = run_evt(config, threads);
  else if (command == "synth") res = run_synth(config, threads);
  else if (command == "cwt-sample") res = run_cwt_sample(config, threads);
  else if (command == "cwt-verify") res = run_cwt_verify(config, threads);
  else throw ConfigError("command", "unknown command '" + command + "'");
  res.report["command"] = command;
  return res;
}

}  // namespace besovlab::cli
