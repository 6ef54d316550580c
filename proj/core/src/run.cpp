#include "qae/run.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qae/cloning.hpp"
#include "qae/entropy.hpp"
#include "qae/randomness.hpp"

namespace qae {

namespace {

using nlohmann::json;

const std::vector<std::string> kSuiteOrder = {"entropy", "tests", "clone",
                                              "caps", "kq-scenario"};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for '" + key + "': " + v);
  }
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': " + v);
  }
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& val) {
  if (key == "dim") {
    cfg.dim = std::size_t(parse_long(val, key));
  } else if (key == "budget") {
    std::vector<std::string> parts = split(val, ',');
    if (parts.size() != 2) throw ConfigError("config: budget wants 'L,T'");
    cfg.budget.max_len = int(parse_long(parts[0], key));
    cfg.budget.max_steps = parse_long(parts[1], key);
  } else if (key == "eps_reg") {
    try {
      cfg.eps_reg = Dyadic::parse(val);
    } catch (const std::exception&) {
      throw ConfigError("config: bad dyadic for 'eps_reg': " + val);
    }
  } else if (key == "seed") {
    cfg.seed = std::uint64_t(parse_long(val, key));
  } else if (key == "suites") {
    cfg.suites = split(val, ',');
  } else if (key == "out") {
    cfg.output_path = val;
  } else if (key == "cap_bound_c") {
    cfg.cap_constants.cap_bound_c = parse_double(val, key);
  } else if (key == "counting_c") {
    cfg.cap_constants.counting_c = parse_double(val, key);
  } else if (key == "herm_tol") {
    cfg.tol.herm_tol = parse_double(val, key);
  } else if (key == "psd_tol") {
    cfg.tol.psd_tol = parse_double(val, key);
  } else if (key == "ortho_tol") {
    cfg.tol.ortho_tol = parse_double(val, key);
  } else if (key == "recon_tol") {
    cfg.tol.recon_tol = parse_double(val, key);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

DensityMatrix random_density(Rng& rng, std::size_t n, const Tolerances& tol) {
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
  ComplexMatrix h = a * a.adjoint();
  double tr = h.trace().real();
  return DensityMatrix(HermitianOperator(cplx{1.0 / tr, 0.0} * h, tol));
}

json entropy_suite(const RunConfig& cfg, const UniversalApprox& ua,
                   bool& all_ok) {
  Rng rng(cfg.seed ^ 0x656e74ULL);
  json out;

  double jensen_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    PureState psi(rng.haar_state(cfg.dim));
    jensen_worst = std::max(jensen_worst, h_lower(ua, psi) - h_upper(ua, psi));
  }
  bool jensen_ok = jensen_worst <= 1e-9;

  bool sandwich_ok = true;
  int sandwich_count = 0;
  for (const auto& [key, entry] : ua.table.entries) {
    if (entry.representative.kind != MachineOutput::Kind::state) continue;
    PureState psi = normalize(entry.representative.state);
    DensityMatrix rho(
        HermitianOperator(psi.projector(), ua.mu.tol()));
    SandwichReport r = entropy_complexity_sandwich(ua, rho, entry.mass);
    sandwich_ok = sandwich_ok && r.ok;
    ++sandwich_count;
  }

  double rel_min = 0.0;
  for (int i = 0; i < 50; ++i) {
    DensityMatrix rho = random_density(rng, cfg.dim, ua.mu.tol());
    DensityMatrix sigma = random_density(rng, cfg.dim, ua.mu.tol());
    rel_min = std::min(rel_min, relative_entropy(rho, sigma));
  }
  bool rel_ok = rel_min >= -1e-9;

  out["jensen_worst_violation"] = jensen_worst;
  out["sandwich_states"] = sandwich_count;
  out["relative_entropy_min"] = rel_min;
  out["pass"] = jensen_ok && sandwich_ok && rel_ok;
  all_ok = all_ok && out["pass"].get<bool>();
  return out;
}

json tests_suite(const RunConfig& cfg, const UniversalApprox& ua,
                 bool& all_ok) {
  Rng rng(cfg.seed ^ 0x747374ULL);
  json out;

  double worst_trace_excess = 0.0;
  double worst_dual_gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    DensityMatrix rho = random_density(rng, cfg.dim, ua.mu.tol());
    TestOperator t = build_test(ua, rho);
    double tr = (t.op.matrix() * rho.op().matrix()).trace().real();
    worst_trace_excess = std::max(worst_trace_excess, tr - 1.0);
    PureState psi(rng.haar_state(cfg.dim));
    double v1 = evaluate_test(t, psi).value;
    double v2 = test_value_coordinates(ua, rho, psi);
    worst_dual_gap = std::max(worst_dual_gap, std::abs(v1 - v2));
  }

  DensityMatrix uniform(HermitianOperator(
      cplx{1.0 / double(cfg.dim), 0.0} * ComplexMatrix::identity(cfg.dim),
      ua.mu.tol()));
  TestOperator tu = build_test(ua, uniform);
  double worst_uniform_gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    PureState psi(rng.haar_state(cfg.dim));
    double v = evaluate_test(tu, psi).value;
    double ref = double(cfg.dim) * ua.mu.quadratic_form(psi.amplitudes());
    worst_uniform_gap = std::max(worst_uniform_gap, std::abs(v - ref));
  }

  out["trace_excess_max"] = worst_trace_excess;
  out["dual_path_gap_max"] = worst_dual_gap;
  out["uniform_reduction_gap_max"] = worst_uniform_gap;
  out["pass"] = worst_trace_excess <= 1e-9 && worst_dual_gap <= 1e-9 &&
                worst_uniform_gap <= 1e-10;
  all_ok = all_ok && out["pass"].get<bool>();
  return out;
}

json clone_suite(const RunConfig& cfg, bool& all_ok) {
  const std::size_t n = cfg.dim, m = 2;
  if (n * n > 4096) throw CapError("clone: N^2 exceeds the 2^12 cap");
  json out;

  SymmetricSubspace s = symmetric_projector(n, m);
  out["dim_symmetric"] = s.dim;
  bool dim_ok = double(s.dim) == binom(unsigned(m + n - 1), unsigned(m));

  Budget b{10, cfg.budget.max_steps};
  EnumerationSnapshot snap = enumerate_programs(n * n, b);
  InjectedWitness w = symmetric_witness(n, m, 10);
  UniversalApprox ua = build_mu(snap, cfg.eps_reg, cfg.tol, {w});
  CloningReport rep = cloning_bounds(ua, n, m, w.output.canonical_key(), 400,
                                     cfg.seed ^ 0x636cULL);

  out["log_dim"] = rep.log_dim;
  out["lower_mean"] = rep.lower_mean;
  out["lower_stderr"] = rep.lower_stderr;
  out["upper_worst_slack"] = rep.upper_worst_slack;
  out["pass"] = dim_ok && rep.upper_ok && rep.lower_ok;
  all_ok = all_ok && out["pass"].get<bool>();
  return out;
}

json caps_suite(const RunConfig& cfg, bool& all_ok) {
  json out;
  bool ok = true;

  double identity_worst = 0.0;
  for (std::size_t n = 2; n <= 128; ++n) {
    double s_n = log_sphere_surface(n);
    double b_n = log_ball_volume(n);
    identity_worst =
        std::max(identity_worst, std::abs(s_n - (std::log(double(n)) + b_n)));
    if (log_ball_volume(n - 1) >= s_n) ok = false;  // b_{n-1} < s_n
  }
  ok = ok && identity_worst <= 1e-12;

  bool sweep_ok = true;
  for (std::size_t n = 4; n <= 128; n *= 2)
    for (double y = 0.05; y <= 1.0; y += 0.05) {
      CapQuery q{n, 1.5707963267948966 - y};
      if (cap_fraction_exact(q) > cap_fraction_bound(q, cfg.cap_constants))
        sweep_ok = false;
    }

  CapQuery q{4, 1.0471975511965976};  // pi/3
  McEstimate mc = cap_fraction_montecarlo(q, 20000, cfg.seed ^ 0x6361ULL);
  double exact = cap_fraction_exact(q);
  bool mc_ok = std::abs(mc.estimate - exact) <= 4.0 * mc.stderr_est;

  CountingScenario sc{4, 4, 2};
  McEstimate cm = counting_montecarlo(sc, 20000, cfg.seed ^ 0x6362ULL);
  bool count_ok =
      cm.estimate <= counting_lemma_fraction(sc, cfg.cap_constants) +
                         4.0 * cm.stderr_est;

  out["identity_worst_gap"] = identity_worst;
  out["cap_mc_estimate"] = mc.estimate;
  out["cap_exact"] = exact;
  out["counting_mc"] = cm.estimate;
  out["pass"] = ok && sweep_ok && mc_ok && count_ok;
  all_ok = all_ok && out["pass"].get<bool>();
  return out;
}

json kq_suite(const RunConfig& cfg, const EnumerationSnapshot& snap,
              bool& all_ok) {
  std::size_t qubits = 0, d = cfg.dim;
  while (d > 1 && (d & 1) == 0) {
    d >>= 1;
    ++qubits;
  }
  if (d != 1 || qubits < 1)
    throw ConfigError("kq-scenario: dim must be a power of two >= 2");
  KqScenarioReport rep =
      kq_lowerbound_scenario(qubits, snap, 200, cfg.seed ^ 0x6b71ULL);
  json out;
  out["v_dim"] = rep.v_dim;
  out["degenerate"] = rep.degenerate;
  out["exponent"] = rep.exponent;
  out["exponent_negative_from"] = rep.exponent_negative_from;
  out["min_kq"] = rep.min_kq;
  out["pass"] = rep.ok && !rep.degenerate;
  all_ok = all_ok && out["pass"].get<bool>();
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (dim < 1) throw ConfigError("config: dim >= 1");
  if (budget.max_len < 1 || budget.max_steps < 1)
    throw ConfigError("config: budget components >= 1");
  if (budget.max_len > kDefaultHardLenCap)
    throw CapError("config: budget length beyond the hard cap");
  if (eps_reg.to_double() <= 0.0 || eps_reg.to_double() >= 1.0)
    throw ConfigError("config: eps_reg in (0, 1)");
  try {
    tol.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  for (const auto& s : suites)
    if (std::find(kSuiteOrder.begin(), kSuiteOrder.end(), s) ==
        kSuiteOrder.end())
      throw ConfigError("config: unknown suite '" + s + "'");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value");
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      std::size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "dim=" << cfg.dim << "\n";
  out << "budget=" << cfg.budget.max_len << "," << cfg.budget.max_steps
      << "\n";
  out << "eps_reg=" << cfg.eps_reg.str() << "\n";
  out << "seed=" << cfg.seed << "\n";
  if (!cfg.suites.empty()) {
    out << "suites=";
    for (std::size_t i = 0; i < cfg.suites.size(); ++i)
      out << (i ? "," : "") << cfg.suites[i];
    out << "\n";
  }
  if (!cfg.output_path.empty()) out << "out=" << cfg.output_path << "\n";
  return out.str();
}

void apply_env_overrides(RunConfig& cfg) {
  const std::pair<const char*, const char*> vars[] = {
      {"QAE_DIM", "dim"},        {"QAE_BUDGET", "budget"},
      {"QAE_EPS_REG", "eps_reg"}, {"QAE_SEED", "seed"},
      {"QAE_SUITES", "suites"},  {"QAE_OUT", "out"},
  };
  for (const auto& [env, key] : vars)
    if (const char* v = std::getenv(env)) apply_key(cfg, key, v);
}

std::string snapshot_digest(const EnumerationSnapshot& snapshot) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  mix(std::to_string(snapshot.dim));
  mix(std::to_string(snapshot.budget.max_len));
  mix(std::to_string(snapshot.budget.max_steps));
  mix(snapshot.kraft_mass.str());
  for (const auto& e : snapshot.entries) {
    mix(e.bits);
    mix(e.output.canonical_key());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

RunResult run(const RunConfig& cfg) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();

  RunResult res;
  res.report["format"] = "qae-report v1";
  res.report["config"] = {
      {"dim", cfg.dim},
      {"budget_len", cfg.budget.max_len},
      {"budget_steps", cfg.budget.max_steps},
      {"eps_reg", cfg.eps_reg.str()},
      {"seed", cfg.seed},
      {"suites", cfg.suites},
  };

  EnumerationSnapshot snap;
  try {
    snap = enumerate_programs(cfg.dim, cfg.budget);
  } catch (const std::length_error& e) {
    throw CapError(e.what());
  }
  res.report["snapshot_digest"] = snapshot_digest(snap);
  res.report["kraft_mass"] = snap.kraft_mass.str();

  UniversalApprox ua = build_mu(snap, cfg.eps_reg, cfg.tol);
  res.report["mu_trace"] = ua.mu.trace_real();

  json suites = json::object();
  for (const auto& name : kSuiteOrder) {
    if (std::find(cfg.suites.begin(), cfg.suites.end(), name) ==
        cfg.suites.end())
      continue;
    if (name == "entropy")
      suites[name] = entropy_suite(cfg, ua, res.all_ok);
    else if (name == "tests")
      suites[name] = tests_suite(cfg, ua, res.all_ok);
    else if (name == "clone")
      suites[name] = clone_suite(cfg, res.all_ok);
    else if (name == "caps")
      suites[name] = caps_suite(cfg, res.all_ok);
    else if (name == "kq-scenario")
      suites[name] = kq_suite(cfg, snap, res.all_ok);
  }
  res.report["suites"] = suites;
  res.report["all_ok"] = res.all_ok;

  auto t1 = std::chrono::steady_clock::now();
  res.report["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return res;
}

}  // namespace qae
