#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qae/cloning.hpp"
#include "qae/entropy.hpp"
#include "qae/randomness.hpp"
#include "qae/run.hpp"

namespace {

using nlohmann::json;
using namespace qae;

struct GlobalOpts {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> dim;
  std::optional<std::string> budget;
};

RunConfig effective_config(const GlobalOpts& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) cfg = load_config(g.config_path);
  apply_env_overrides(cfg);
  if (g.seed) cfg.seed = *g.seed;
  if (g.dim) cfg.dim = *g.dim;
  if (g.budget) {
    std::istringstream in(*g.budget);
    char comma = 0;
    int l = 0;
    long t = 0;
    if (!(in >> l >> comma >> t) || comma != ',')
      throw ConfigError("--budget wants 'L,T'");
    cfg.budget = Budget{l, t};
  }
  if (!g.out_path.empty()) cfg.output_path = g.out_path;
  return cfg;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open output file: " + out_path);
  out << text;
  if (!out) throw IoError("write failed: " + out_path);
}

EnumerationSnapshot enumerate_checked(std::size_t dim, const Budget& b) {
  try {
    return enumerate_programs(dim, b);
  } catch (const std::length_error& e) {
    throw CapError(e.what());
  }
}

ComplexMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file: " + path);
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw IoError("matrix file: bad dimension header");
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im))
        throw IoError("matrix file: truncated at entry (" +
                      std::to_string(i) + "," + std::to_string(j) + ")");
      m(i, j) = cplx{re, im};
    }
  return m;
}

int cmd_mu(const RunConfig& cfg, const std::vector<std::string>& states) {
  EnumerationSnapshot snap = enumerate_checked(cfg.dim, cfg.budget);
  UniversalApprox ua = build_mu(snap, cfg.eps_reg, cfg.tol);

  json j;
  j["format"] = "qae-report v1";
  j["dim"] = cfg.dim;
  j["kraft_mass"] = snap.kraft_mass.str();
  j["snapshot_digest"] = snapshot_digest(snap);
  j["mu_spectrum"] = ua.mu.eig().values;
  j["kappa_spectrum"] = ua.kappa.eig().values;

  json reports = json::array();
  for (const auto& enc : states) {
    PureState psi = normalize(ElementaryVector::decode(enc));
    json r;
    r["state"] = enc;
    r["h_lower"] = h_lower(ua, psi);
    r["h_upper"] = h_upper(ua, psi);
    double kq = kq_t(snap, psi);
    if (std::isfinite(kq)) r["kq"] = kq;
    auto it = ua.table.entries.find(
        "S:" + ElementaryVector::decode(enc).canonical().encode());
    if (it != ua.table.entries.end()) r["k_t"] = it->second.k_t;
    reports.push_back(r);
  }
  j["states"] = reports;
  emit(j, cfg.output_path);
  return 0;
}

int cmd_verify(RunConfig cfg, const std::vector<std::string>& suites) {
  if (!suites.empty()) cfg.suites = suites;
  RunResult res = qae::run(cfg);
  emit(res.report, cfg.output_path);
  return res.all_ok ? 0 : 1;
}

int cmd_test(const RunConfig& cfg, const std::string& rho_path,
             const std::string& state_enc) {
  ComplexMatrix raw = read_matrix(rho_path);
  DensityMatrix rho(HermitianOperator(std::move(raw), cfg.tol));
  EnumerationSnapshot snap = enumerate_checked(rho.dim(), cfg.budget);
  UniversalApprox ua = build_mu(snap, cfg.eps_reg, cfg.tol);

  PureState psi = normalize(ElementaryVector::decode(state_enc));
  TestOperator t = build_test(ua, rho);
  TestValue v = evaluate_test(t, psi);

  json j;
  j["format"] = "qae-report v1";
  j["value"] = v.value;
  j["deficiency_bits"] = v.deficiency;
  j["test_spectrum"] = t.op.eig().values;
  emit(j, cfg.output_path);
  return 0;
}

int cmd_clone(const RunConfig& cfg, std::size_t fold, std::size_t samples) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < fold; ++i) {
    if (total > 4096 / cfg.dim) throw CapError("clone: N^m exceeds 2^12");
    total *= cfg.dim;
  }
  SymmetricSubspace s = symmetric_projector(cfg.dim, fold);
  EnumerationSnapshot snap = enumerate_checked(total, cfg.budget);
  InjectedWitness w = symmetric_witness(cfg.dim, fold, 10);
  UniversalApprox ua = build_mu(snap, cfg.eps_reg, cfg.tol, {w});
  CloningReport rep = cloning_bounds(ua, cfg.dim, fold,
                                     w.output.canonical_key(), samples,
                                     cfg.seed);
  json j;
  j["format"] = "qae-report v1";
  j["dim"] = cfg.dim;
  j["fold"] = fold;
  j["dim_symmetric"] = s.dim;
  j["log_dim"] = rep.log_dim;
  j["k_t"] = rep.k_t;
  j["upper_ok"] = rep.upper_ok;
  j["upper_worst_slack"] = rep.upper_worst_slack;
  j["lower_mean"] = rep.lower_mean;
  j["lower_stderr"] = rep.lower_stderr;
  j["lower_ok"] = rep.lower_ok;
  emit(j, cfg.output_path);
  return rep.upper_ok && rep.lower_ok ? 0 : 1;
}

int cmd_uneven(const RunConfig& cfg, std::size_t d, std::size_t trials) {
  AlgebraicBoundReport rep =
      algebraic_bound_check(cfg.dim, d, trials, cfg.seed);
  json j;
  j["format"] = "qae-report v1";
  j["dim"] = cfg.dim;
  j["subspace_dim"] = d;
  j["bound"] = rep.bound;
  j["min_u"] = rep.min_u;
  j["trials"] = rep.trials;
  j["ok"] = rep.ok;
  emit(j, cfg.output_path);
  return rep.ok ? 0 : 1;
}

int cmd_caps(const RunConfig& cfg, std::size_t n, double alpha,
             std::size_t samples) {
  CapQuery q{n, alpha};
  json j;
  j["format"] = "qae-report v1";
  j["n"] = n;
  j["alpha"] = alpha;
  j["exact"] = cap_fraction_exact(q);
  if (alpha < 1.5707963267948966)
    j["bound"] = cap_fraction_bound(q, cfg.cap_constants);
  if (samples > 0) {
    McEstimate mc = cap_fraction_montecarlo(q, samples, cfg.seed);
    j["estimate"] = mc.estimate;
    j["stderr"] = mc.stderr_est;
  }
  emit(j, cfg.output_path);
  return 0;
}

int cmd_kq(const RunConfig& cfg, std::size_t qubits, std::size_t samples) {
  EnumerationSnapshot snap =
      enumerate_checked(std::size_t(1) << qubits, cfg.budget);
  KqScenarioReport rep =
      kq_lowerbound_scenario(qubits, snap, samples, cfg.seed);
  json j;
  j["format"] = "qae-report v1";
  j["qubits"] = rep.qubits;
  j["dim"] = rep.dim;
  j["v_dim"] = rep.v_dim;
  j["degenerate"] = rep.degenerate;
  j["exponent"] = rep.exponent;
  j["exponent_negative_from"] = rep.exponent_negative_from;
  j["min_kq"] = rep.min_kq;
  j["ok"] = rep.ok;
  emit(j, cfg.output_path);
  return rep.ok ? 0 : 1;
}

int cmd_snapshot(const RunConfig& cfg, const std::string& write_path,
                 const std::string& read_path) {
  if (!write_path.empty()) {
    EnumerationSnapshot snap = enumerate_checked(cfg.dim, cfg.budget);
    try {
      save_snapshot(snap, write_path);
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
    json j;
    j["format"] = "qae-report v1";
    j["written"] = write_path;
    j["entries"] = snap.entries.size();
    j["kraft_mass"] = snap.kraft_mass.str();
    j["digest"] = snapshot_digest(snap);
    emit(j, cfg.output_path);
    return 0;
  }
  EnumerationSnapshot snap;
  try {
    snap = load_snapshot(read_path);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  json j;
  j["format"] = "qae-report v1";
  j["read"] = read_path;
  j["dim"] = snap.dim;
  j["entries"] = snap.entries.size();
  j["kraft_mass"] = snap.kraft_mass.str();
  j["digest"] = snapshot_digest(snap);
  emit(j, cfg.output_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resource-bounded quantum algorithmic entropy toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "flat key=value config file");
  app.add_option("--out", g.out_path, "write the JSON report here");
  std::uint64_t seed_opt = 0;
  std::size_t dim_opt = 0;
  std::string budget_opt;
  auto* seed_flag = app.add_option("--seed", seed_opt, "RNG seed");
  auto* dim_flag = app.add_option("--dim", dim_opt, "base dimension N");
  auto* budget_flag = app.add_option("--budget", budget_opt, "budget 'L,T'");

  auto* mu = app.add_subcommand("mu", "build mu/kappa and score states");
  std::vector<std::string> states;
  std::string eps_str;
  mu->add_option("--state", states, "elementary state encoding (repeatable)");
  mu->add_option("--eps-reg", eps_str, "regularizer mass, 'num/2^exp'");

  auto* verify = app.add_subcommand("verify", "run assertion suites");
  std::vector<std::string> suites;
  verify->add_option("--suite", suites, "suite name (repeatable)");

  auto* test = app.add_subcommand("test", "universal randomness test");
  std::string rho_path, state_enc;
  test->add_option("--rho", rho_path, "density matrix file")->required();
  test->add_option("--state", state_enc, "elementary state encoding")
      ->required();

  auto* clone = app.add_subcommand("clone", "copying complexity bounds");
  std::size_t fold = 2, clone_samples = 400;
  clone->add_option("--fold", fold, "number of copies m");
  clone->add_option("--samples", clone_samples, "Haar samples");

  auto* uneven = app.add_subcommand("uneven", "symmetric-subspace unevenness");
  std::size_t subspace_dim = 1, trials = 100;
  uneven->add_option("--subspace-dim", subspace_dim, "subspace dimension d");
  uneven->add_option("--trials", trials, "random subspaces");

  auto* caps = app.add_subcommand("caps", "spherical cap fractions");
  std::size_t cap_n = 4, cap_samples = 0;
  double alpha = 1.0471975511965976;
  caps->add_option("--n", cap_n, "real sphere dimension");
  caps->add_option("--alpha", alpha, "half-angle in radians");
  caps->add_option("--samples", cap_samples, "Monte-Carlo samples (0 = skip)");

  auto* kq = app.add_subcommand("kq-scenario", "toy incompressibility run");
  std::size_t qubits = 4, kq_samples = 1000;
  kq->add_option("--qubits", qubits, "qubit count n");
  kq->add_option("--samples", kq_samples, "states sampled in V");

  auto* snapshot = app.add_subcommand("snapshot", "save or verify a snapshot");
  std::string snap_write, snap_read;
  snapshot->add_option("--write", snap_write, "enumerate and save here");
  snapshot->add_option("--read", snap_read, "load and verify this file");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*seed_flag) g.seed = seed_opt;
    if (*dim_flag) g.dim = dim_opt;
    if (*budget_flag) g.budget = budget_opt;
    RunConfig cfg = effective_config(g);

    if (mu->parsed()) {
      if (!eps_str.empty()) cfg.eps_reg = Dyadic::parse(eps_str);
      return cmd_mu(cfg, states);
    }
    if (verify->parsed()) return cmd_verify(cfg, suites);
    if (test->parsed()) return cmd_test(cfg, rho_path, state_enc);
    if (clone->parsed()) return cmd_clone(cfg, fold, clone_samples);
    if (uneven->parsed()) return cmd_uneven(cfg, subspace_dim, trials);
    if (caps->parsed()) return cmd_caps(cfg, cap_n, alpha, cap_samples);
    if (kq->parsed()) return cmd_kq(cfg, qubits, kq_samples);
    if (snapshot->parsed()) {
      if (snap_write.empty() == snap_read.empty())
        throw ConfigError("snapshot: exactly one of --write/--read");
      return cmd_snapshot(cfg, snap_write, snap_read);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CapError& e) {
    std::cerr << "cap violation: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
