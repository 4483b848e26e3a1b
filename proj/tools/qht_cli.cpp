#include "qht_cli.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qht/binary.hpp"
#include "qht/divergences.hpp"
#include "qht/multi.hpp"
#include "qht/sample_complexity.hpp"
#include "qht/schur.hpp"
#include "qht/state_io.hpp"
#include "qht/strategies.hpp"

namespace qht::cli {

using nlohmann::json;

namespace {

constexpr double kLn2 = 0.6931471805599453;

Eigen::Index dense_cap_from_env() {
  if (const char* raw = std::getenv("QHT_DENSE_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(raw, &end, 10);
    if (end != raw && v >= 2) return static_cast<Eigen::Index>(v);
  }
  return kDefaultDenseCap;
}

Backend pick_backend(const std::string& name, Eigen::Index dim) {
  if (name == "dense") return Backend::dense;
  if (name == "schur") return Backend::schur;
  return dim == 2 ? Backend::schur : Backend::dense;
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    out << "key,value\n";
    for (const auto& [key, value] : rows) out << key << ',' << value << '\n';
  } else {
    out << j.dump(2) << '\n';
  }
}

json value_or_infinity(double v) {
  if (std::isinf(v)) return "infinity";
  return v;
}

// --- selftest ----------------------------------------------------------------

struct CheckRunner {
  std::vector<SelftestCheck> results;
  void record(const std::string& name, long long cases, bool pass,
              const std::string& detail = "") {
    results.push_back({name, pass, cases, detail});
  }
};

Matrix random_psd(int dim, int rank, std::uint64_t seed, double scale) {
  return scale * random_density(dim, rank, seed).mat();
}

}  // namespace

std::vector<FigRow> fig_compare(int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("fig_compare: grid_points must be >= 2");
  std::vector<FigRow> rows;
  rows.push_back({0.0, 0.0, 0.5, 0.5});  // x→0 limit row
  for (int k = 1; k <= grid_points; ++k) {
    const double x = static_cast<double>(k) / (grid_points + 1);
    const double f1 = 1.0 / (-std::log(x));
    const double f2 = 1.0 / (2.0 * (1.0 - std::sqrt(x)));
    rows.push_back({x, f1, f2, f2 - f1});
  }
  return rows;
}

std::vector<SelftestCheck> run_selftest(int pairs, unsigned seed) {
  CheckRunner runner;
  constexpr double kSlack = 1e-9;

  // Relation suite over random pairs, dims 2 and 3, mixed ranks.
  long long violations_chain = 0, violations_bh = 0, violations_bc = 0, violations_z = 0;
  long long violations_chernoff = 0, violations_fg = 0, violations_pg = 0,
            violations_sub = 0, violations_mult = 0, violations_comm = 0;
  for (int i = 0; i < pairs; ++i) {
    const int dim = (i % 2 == 0) ? 2 : 3;
    const std::uint64_t s = seed + 977 * static_cast<std::uint64_t>(i);
    const auto rho = random_density(dim, 1 + static_cast<int>(s % dim), s);
    const auto sigma = random_density(dim, 1 + static_cast<int>((s / 7) % dim), s + 1);

    const double f = fidelity(rho, sigma);
    const double fh = holevo_fidelity(rho, sigma);
    const double qmin = q_min(rho.mat(), sigma.mat()).value;
    const double db = bures_distance(rho, sigma);
    const double dh = hellinger_distance(rho, sigma);
    const double c = chernoff(rho, sigma).value;

    if (!(fh <= f + kSlack && f <= qmin + kSlack && qmin <= std::sqrt(fh) + kSlack))
      ++violations_chain;
    if (!(db <= dh + kSlack && dh <= std::sqrt(2.0) * db + kSlack)) ++violations_bh;
    if (!(db * db <= -std::log(f) + kSlack && -std::log(f) <= -std::log(fh) + kSlack &&
          -std::log(fh) <= 2.0 * c + kSlack && 2.0 * c <= -2.0 * std::log(f) + kSlack))
      ++violations_bc;
    double prev = -std::log(f) - kSlack;
    bool z_ok = true;
    for (double z : {0.5, 0.625, 0.75, 0.875, 1.0}) {
      const double neg_log_fz = -std::log(z_fidelity(rho, sigma, z));
      if (neg_log_fz + kSlack < prev) z_ok = false;
      prev = std::max(prev, neg_log_fz - kSlack);
    }
    if (!z_ok || prev > -std::log(fh) + 2.0 * kSlack) ++violations_z;

    // operator-level relations on PSD operators
    const Matrix a = random_psd(dim, dim, s + 11, 0.5 + (s % 5) * 0.3);
    const Matrix b = random_psd(dim, 1 + static_cast<int>(s % dim), s + 13,
                                0.4 + (s % 3) * 0.5);
    const Matrix cc = random_psd(dim, dim, s + 17, 0.9);
    const double tr_ab = (a + b).trace().real();
    const double dist_ab = trace_norm(a - b);
    if (!(0.5 * (tr_ab - dist_ab) <= q_min(a, b).value + kSlack)) ++violations_chernoff;
    const double overlap_norm = sqrt_overlap_trace_norm(a, b);
    const double overlap_tr = sqrt_overlap_trace(a, b);
    const double fg_rhs_sq = std::max(0.0, tr_ab * tr_ab - 4.0 * overlap_norm * overlap_norm);
    if (!(tr_ab - 2.0 * overlap_tr <= dist_ab + kSlack &&
          dist_ab <= std::sqrt(fg_rhs_sq) + kSlack))
      ++violations_fg;
    const Matrix mid = psd_power(a + b, -0.5);
    const double pretty_good = (a * mid * b * mid).trace().real();
    if (!(pretty_good <= 0.5 * tr_ab - 0.5 * dist_ab + kSlack)) ++violations_pg;
    if (!(sqrt_overlap_trace_norm(a, b + cc) <=
          sqrt_overlap_trace_norm(a, b) + sqrt_overlap_trace_norm(a, cc) + kSlack))
      ++violations_sub;

    // multiplicativity by explicit Kronecker powers
    for (int n = 2; n <= 3; ++n) {
      const DensityMatrix rho_n{kron_power(rho.mat(), n)};
      const DensityMatrix sigma_n{kron_power(sigma.mat(), n)};
      if (std::abs(fidelity(rho_n, sigma_n) - std::pow(f, n)) > 1e-8) ++violations_mult;
    }

    // commuting pairs reduce to the classical quantities
    Eigen::VectorXd diag_p = Eigen::VectorXd::Zero(dim), diag_q = Eigen::VectorXd::Zero(dim);
    {
      std::mt19937_64 rng(s + 23);
      std::uniform_real_distribution<double> uni(0.05, 1.0);
      for (int k = 0; k < dim; ++k) {
        diag_p[k] = uni(rng);
        diag_q[k] = uni(rng);
      }
      diag_p /= diag_p.sum();
      diag_q /= diag_q.sum();
    }
    const DensityMatrix dp{Matrix(diag_p.cast<Complex>().asDiagonal())};
    const DensityMatrix dq{Matrix(diag_q.cast<Complex>().asDiagonal())};
    if (std::abs(fidelity(dp, dq) - holevo_fidelity(dp, dq)) > 1e-10) ++violations_comm;
    for (double alpha : {0.3, 0.7, 2.0})
      if (std::abs(petz_renyi(alpha, dp, dq) - sandwiched_renyi(alpha, dp, dq)) > 1e-9)
        ++violations_comm;
  }
  const auto ok = [](long long v) { return v == 0; };
  runner.record("fidelity-chain", pairs, ok(violations_chain));
  runner.record("bures-hellinger", pairs, ok(violations_bh));
  runner.record("bures-chernoff-chain", pairs, ok(violations_bc));
  runner.record("z-fidelity-ordering", pairs, ok(violations_z));
  runner.record("chernoff-psd-lower", pairs, ok(violations_chernoff));
  runner.record("fuchs-van-de-graaf", pairs, ok(violations_fg));
  runner.record("pretty-good-relation", pairs, ok(violations_pg));
  runner.record("sqrt-overlap-subadditivity", pairs, ok(violations_sub));
  runner.record("fidelity-multiplicativity", pairs, ok(violations_mult));
  runner.record("commuting-reduction", pairs, ok(violations_comm));

  // sample-complexity sandwiches at reduced counts
  const int batch = std::max(4, pairs / 10);
  long long sandwich_bad = 0;
  for (int i = 0; i < batch; ++i) {
    const std::uint64_t s = seed + 5000 + 31 * static_cast<std::uint64_t>(i);
    const auto rho = random_density(2, 2, s);
    const auto sigma = random_density(2, 2, s + 1);
    const double f = fidelity(rho, sigma);
    if (f < 0.05 || f > 0.95) continue;
    const BinaryInstance inst(0.5, rho, sigma);
    const auto report = n_star_symmetric(inst, 0.05, Backend::schur, {400, kDefaultDenseCap});
    if (!report.empirical_n_star) {
      ++sandwich_bad;
      continue;
    }
    const double n_star = static_cast<double>(*report.empirical_n_star);
    for (const auto& [name, lower] : report.lower_bounds)
      if (lower > n_star + 1e-9) ++sandwich_bad;
    for (const auto& [name, upper] : report.upper_bounds)
      if (static_cast<double>(upper) < n_star) ++sandwich_bad;
  }
  runner.record("symmetric-sandwich", batch, sandwich_bad == 0);

  long long pure_bad = 0;
  for (int i = 0; i < batch; ++i) {
    const std::uint64_t s = seed + 9000 + 17 * static_cast<std::uint64_t>(i);
    const auto rho = random_density(2, 1, s);
    const auto sigma = random_density(2, 1, s + 1);
    const double f = fidelity(rho, sigma);
    if (f < 0.01 || f > 0.6) continue;
    const BinaryInstance inst(0.5, rho, sigma);
    const auto report = n_star_symmetric(inst, 0.05, Backend::schur, {400, kDefaultDenseCap});
    if (!report.exact || !report.empirical_n_star || *report.exact != *report.empirical_n_star)
      ++pure_bad;
  }
  runner.record("pure-exactness", batch, pure_bad == 0);
  return runner.results;
}

namespace {

int cmd_random_state(int dim, int rank, std::uint64_t seed, const std::string& out_path,
                     const std::string& format, std::ostream& out) {
  const auto rho = random_density(dim, rank, seed);
  if (!out_path.empty()) {
    save_state(rho, out_path);
    json j;
    j["written"] = out_path;
    j["dim"] = dim;
    j["rank"] = rank;
    j["seed"] = seed;
    emit(j, format, out);
  } else {
    out << state_to_json(rho).dump(2) << '\n';
  }
  return 0;
}

int cmd_divergence(const std::string& measure, const std::string& a_path,
                   const std::string& b_path, std::optional<double> alpha,
                   std::optional<double> z, bool bits, const std::string& format,
                   std::ostream& out) {
  const auto a = load_state(a_path);
  const auto b = load_state(b_path);
  json j;
  j["measure"] = measure;
  bool log_based = false;
  DivergenceValue dv;
  if (measure == "fidelity") {
    dv = fidelity_family(FidelityKind::uhlmann, a, b);
  } else if (measure == "holevo-fidelity") {
    dv = fidelity_family(FidelityKind::holevo, a, b);
  } else if (measure == "z-fidelity") {
    if (!z) throw std::invalid_argument("z-fidelity requires --z");
    dv = fidelity_family(FidelityKind::z, a, b, z);
    j["z"] = *z;
  } else if (measure == "trace-distance") {
    dv = distance(DistanceKind::trace, a, b);
  } else if (measure == "bures") {
    dv = distance(DistanceKind::bures, a, b);
  } else if (measure == "hellinger") {
    dv = distance(DistanceKind::hellinger, a, b);
  } else if (measure == "petz" || measure == "sandwiched") {
    if (!alpha) throw std::invalid_argument(measure + " requires --alpha");
    dv = renyi(measure == "petz" ? RenyiKind::petz : RenyiKind::sandwiched, *alpha, a, b);
    j["alpha"] = *alpha;
    log_based = true;
  } else if (measure == "relative-entropy") {
    dv = relative_entropy_value(a, b);
    log_based = true;
  } else if (measure == "chernoff") {
    const auto c = chernoff(a, b);
    dv = {c.value, "chernoff", std::nullopt};
    j["s_star"] = c.s_star;
    log_based = true;
  } else {
    throw std::invalid_argument("unknown measure '" + measure + "'");
  }
  double value = dv.value;
  if (log_based) {
    if (bits && std::isfinite(value)) value /= kLn2;
    j["units"] = bits ? "bits" : "nats";
  }
  j["value"] = value_or_infinity(value);
  emit(j, format, out);
  return 0;
}

int cmd_perr(double p, const std::string& rho_path, const std::string& sigma_path, int n,
             const std::string& backend_name, const std::string& format, std::ostream& out) {
  const auto rho = load_state(rho_path);
  const auto sigma = load_state(sigma_path);
  const BinaryInstance inst(p, rho, sigma);
  const Backend backend = pick_backend(backend_name, rho.dim());
  const auto result = helstrom_error(inst, n, backend, dense_cap_from_env());
  json j;
  j["p_e"] = result.error;
  j["n"] = n;
  j["backend"] = backend == Backend::schur ? "schur" : "dense";
  emit(j, format, out);
  return 0;
}

int cmd_beta(const std::string& rho_path, const std::string& sigma_path, double eps, int n,
             const std::string& backend_name, const std::string& format, std::ostream& out) {
  const auto rho = load_state(rho_path);
  const auto sigma = load_state(sigma_path);
  const Backend backend = pick_backend(backend_name, rho.dim());
  const auto result = beta(rho, sigma, eps, n, backend, dense_cap_from_env());
  json j;
  j["beta"] = result.beta;
  j["type_one"] = result.type_one;
  j["threshold"] = value_or_infinity(result.threshold);
  j["randomized"] = result.randomized;
  j["n"] = n;
  j["backend"] = backend == Backend::schur ? "schur" : "dense";
  emit(j, format, out);
  return 0;
}

int cmd_mary(const std::string& ens_path, int n, const std::string& method, double tolerance,
             int max_iters, const std::string& format, std::ostream& out) {
  const auto ens = Ensemble::from_data(load_ensemble(ens_path));
  const Eigen::Index cap = dense_cap_from_env();
  json j;
  j["M"] = ens.size();
  j["n"] = n;
  j["pgm_error_bound"] = pgm_error_bound(ens, n);
  if (method == "pgm") {
    const auto povm = pgm(ens, n, cap);
    j["method"] = "pgm";
    j["error"] = error_of_povm(ens, n, povm, cap);
  } else if (method == "optimal") {
    const auto result = optimal_error_iterative(ens, n, tolerance, max_iters, cap);
    j["method"] = "optimal";
    j["error"] = result.error;
    j["certificate_residual"] = result.certificate_residual;
    j["iterations"] = result.iterations;
    j["converged"] = result.converged;
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  emit(j, format, out);
  return 0;
}

int cmd_fuchs_caves(const std::string& rho_path, const std::string& sigma_path, double p,
                    std::optional<int> n, const std::string& format, std::ostream& out) {
  const auto rho = load_state(rho_path);
  const auto sigma = load_state(sigma_path);
  const auto fc = fuchs_caves(rho, sigma);
  json j;
  j["lambdas"] = std::vector<double>(fc.lambdas.data(), fc.lambdas.data() + fc.lambdas.size());
  j["p_dist"] = std::vector<double>(fc.p_dist.data(), fc.p_dist.data() + fc.p_dist.size());
  j["q_dist"] = std::vector<double>(fc.q_dist.data(), fc.q_dist.data() + fc.q_dist.size());
  double classical = 0.0;
  for (Eigen::Index y = 0; y < fc.p_dist.size(); ++y)
    classical += std::sqrt(fc.p_dist[y] * fc.q_dist[y]);
  j["classical_fidelity"] = classical * classical;
  j["fidelity"] = fidelity(rho, sigma);
  if (n) {
    j["n"] = *n;
    j["p"] = p;
    j["fc_error"] = fc_error(p, rho, sigma, *n);
  }
  emit(j, format, out);
  return 0;
}

int cmd_fig_compare(int points, const std::string& format, std::ostream& out) {
  const auto rows = fig_compare(points);
  if (format == "csv") {
    out << "x,inv_neg_log,inv_two_one_minus_sqrt,gap\n";
    out << std::setprecision(17);
    for (const auto& r : rows)
      out << r.x << ',' << r.inv_neg_log << ',' << r.inv_two_one_minus_sqrt << ',' << r.gap
          << '\n';
    return 0;
  }
  json j;
  j["rows"] = json::array();
  double max_gap = 0.0;
  for (const auto& r : rows) {
    j["rows"].push_back({{"x", r.x},
                         {"inv_neg_log", r.inv_neg_log},
                         {"inv_two_one_minus_sqrt", r.inv_two_one_minus_sqrt},
                         {"gap", r.gap}});
    max_gap = std::max(max_gap, r.gap);
  }
  j["max_gap"] = max_gap;
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_selftest(int pairs, unsigned seed, std::ostream& out) {
  const auto checks = run_selftest(pairs, seed);
  bool all = true;
  for (const auto& check : checks) {
    out << (check.pass ? "PASS " : "FAIL ") << check.name << " (" << check.cases
        << " cases)";
    if (!check.detail.empty()) out << " " << check.detail;
    out << '\n';
    all = all && check.pass;
  }
  out << (all ? "selftest: all checks passed" : "selftest: FAILURES above") << '\n';
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantum hypothesis testing toolkit"};
  app.require_subcommand(1);

  std::string format = "json";

  // random-state
  auto* rs = app.add_subcommand("random-state", "generate a seeded random state");
  int rs_dim = 2, rs_rank = 1;
  std::uint64_t rs_seed = 0;
  std::string rs_out;
  std::string rs_format = "json";
  rs->add_option("--dim", rs_dim, "Hilbert-space dimension")->check(CLI::PositiveNumber);
  rs->add_option("--rank", rs_rank, "state rank")->check(CLI::PositiveNumber);
  rs->add_option("--seed", rs_seed, "RNG seed");
  rs->add_option("--out", rs_out, "output file (stdout when omitted)");
  rs->add_option("--format", rs_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // divergence
  auto* dv = app.add_subcommand("divergence", "distinguishability measures");
  std::string dv_measure, dv_a, dv_b;
  std::string dv_format = "json";
  double dv_alpha = 0.0, dv_z = 0.0;
  bool dv_has_alpha = false, dv_has_z = false, dv_bits = false;
  dv->add_option("--measure", dv_measure,
                 "fidelity|holevo-fidelity|z-fidelity|trace-distance|bures|hellinger|"
                 "petz|sandwiched|relative-entropy|chernoff")
      ->required();
  dv->add_option("--a", dv_a, "state file for the first argument")->required();
  dv->add_option("--b", dv_b, "state file for the second argument")->required();
  dv->add_option("--alpha", dv_alpha, "Renyi order")->each([&](const std::string&) {
    dv_has_alpha = true;
  });
  dv->add_option("--z", dv_z, "z-fidelity parameter in [1/2,1]")->each(
      [&](const std::string&) { dv_has_z = true; });
  dv->add_flag("--bits", dv_bits, "display log-based values in bits instead of nats");
  dv->add_option("--format", dv_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // perr
  auto* pe = app.add_subcommand("perr", "optimal symmetric error probability");
  double pe_p = 0.5;
  std::string pe_rho, pe_sigma, pe_backend = "auto", pe_format = "json";
  int pe_n = 1;
  pe->add_option("--p", pe_p, "prior for rho")->check(CLI::Range(1e-12, 1.0 - 1e-12));
  pe->add_option("--rho", pe_rho)->required();
  pe->add_option("--sigma", pe_sigma)->required();
  pe->add_option("--n", pe_n, "number of copies")->check(CLI::PositiveNumber);
  pe->add_option("--backend", pe_backend, "auto|dense|schur")
      ->check(CLI::IsMember({"auto", "dense", "schur"}));
  pe->add_option("--format", pe_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // beta
  auto* bt = app.add_subcommand("beta", "minimum type-II error at a type-I budget");
  std::string bt_rho, bt_sigma, bt_backend = "auto", bt_format = "json";
  double bt_eps = 0.05;
  int bt_n = 1;
  bt->add_option("--rho", bt_rho)->required();
  bt->add_option("--sigma", bt_sigma)->required();
  bt->add_option("--eps", bt_eps, "type-I budget in [0,1)")->required();
  bt->add_option("--n", bt_n)->check(CLI::PositiveNumber);
  bt->add_option("--backend", bt_backend, "auto|dense|schur")
      ->check(CLI::IsMember({"auto", "dense", "schur"}));
  bt->add_option("--format", bt_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // sample-complexity with sym/asym/mary
  auto* sc = app.add_subcommand("sample-complexity", "sample-complexity reports");
  sc->require_subcommand(1);
  auto* sym = sc->add_subcommand("sym", "symmetric binary setting");
  double sym_p = 0.5, sym_eps = 0.05;
  std::string sym_rho, sym_sigma, sym_backend = "auto", sym_format = "json";
  long long sym_nmax = 1000;
  sym->add_option("--p", sym_p)->check(CLI::Range(1e-12, 1.0 - 1e-12));
  sym->add_option("--rho", sym_rho)->required();
  sym->add_option("--sigma", sym_sigma)->required();
  sym->add_option("--eps", sym_eps)->required();
  sym->add_option("--backend", sym_backend, "auto|dense|schur")
      ->check(CLI::IsMember({"auto", "dense", "schur"}));
  sym->add_option("--n-max", sym_nmax)->check(CLI::PositiveNumber);
  sym->add_option("--format", sym_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* asym = sc->add_subcommand("asym", "asymmetric binary setting");
  double asym_eps = 0.05, asym_delta = 0.05, asym_gamma = 2.0;
  std::string asym_rho, asym_sigma, asym_backend = "auto", asym_format = "json";
  long long asym_nmax = 1000;
  asym->add_option("--rho", asym_rho)->required();
  asym->add_option("--sigma", asym_sigma)->required();
  asym->add_option("--eps", asym_eps, "type-I budget")->required();
  asym->add_option("--delta", asym_delta, "type-II target")->required();
  asym->add_option("--gamma", asym_gamma, "order range bound, > 1");
  asym->add_option("--backend", asym_backend, "auto|dense|schur")
      ->check(CLI::IsMember({"auto", "dense", "schur"}));
  asym->add_option("--n-max", asym_nmax)->check(CLI::PositiveNumber);
  asym->add_option("--format", asym_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* mary_sc = sc->add_subcommand("mary", "M-ary setting");
  std::string mary_sc_ens, mary_sc_format = "json";
  double mary_sc_eps = 0.05;
  mary_sc->add_option("--ensemble", mary_sc_ens, "ensemble file")->required();
  mary_sc->add_option("--eps", mary_sc_eps)->required();
  mary_sc->add_option("--format", mary_sc_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // mary error computation
  auto* my = app.add_subcommand("mary", "M-ary error for a fixed n");
  std::string my_ens, my_method = "pgm", my_format = "json";
  int my_n = 1, my_iters = 5000;
  double my_tol = 1e-7;
  my->add_option("--ensemble", my_ens)->required();
  my->add_option("--n", my_n)->check(CLI::PositiveNumber);
  my->add_option("--method", my_method, "pgm|optimal")
      ->check(CLI::IsMember({"pgm", "optimal"}));
  my->add_option("--tol", my_tol, "certificate residual tolerance");
  my->add_option("--max-iters", my_iters)->check(CLI::PositiveNumber);
  my->add_option("--format", my_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // fuchs-caves
  auto* fc = app.add_subcommand("fuchs-caves", "product-measurement strategy");
  std::string fc_rho, fc_sigma, fc_format = "json";
  double fc_p = 0.5;
  int fc_n = 0;
  bool fc_has_n = false;
  fc->add_option("--rho", fc_rho)->required();
  fc->add_option("--sigma", fc_sigma)->required();
  fc->add_option("--p", fc_p, "prior for rho")->check(CLI::Range(1e-12, 1.0 - 1e-12));
  fc->add_option("--n", fc_n, "copies for the exact strategy error (qubits)")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { fc_has_n = true; });
  fc->add_option("--format", fc_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // fig-compare
  auto* fg = app.add_subcommand("fig-compare", "compare 1/(-ln x) with 1/(2(1-sqrt x))");
  int fg_points = 100;
  std::string fg_format = "json";
  fg->add_option("--points", fg_points, "grid points in (0,1)")->check(CLI::Range(2, 10000000));
  fg->add_option("--format", fg_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // selftest
  auto* st = app.add_subcommand("selftest", "reduced property suite");
  int st_pairs = 60;
  unsigned st_seed = 7;
  st->add_option("--pairs", st_pairs)->check(CLI::PositiveNumber);
  st->add_option("--seed", st_seed);

  std::vector<const char*> argv;
  argv.push_back("qht");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    const SearchLimits limits{1000, dense_cap_from_env()};
    if (rs->parsed()) return cmd_random_state(rs_dim, rs_rank, rs_seed, rs_out, rs_format, out);
    if (dv->parsed())
      return cmd_divergence(dv_measure, dv_a, dv_b,
                            dv_has_alpha ? std::optional<double>(dv_alpha) : std::nullopt,
                            dv_has_z ? std::optional<double>(dv_z) : std::nullopt, dv_bits,
                            dv_format, out);
    if (pe->parsed()) return cmd_perr(pe_p, pe_rho, pe_sigma, pe_n, pe_backend, pe_format, out);
    if (bt->parsed()) return cmd_beta(bt_rho, bt_sigma, bt_eps, bt_n, bt_backend, bt_format, out);
    if (sym->parsed()) {
      const auto rho = load_state(sym_rho);
      const auto sigma = load_state(sym_sigma);
      const BinaryInstance inst(sym_p, rho, sigma);
      SearchLimits l = limits;
      l.n_max = sym_nmax;
      const auto report =
          n_star_symmetric(inst, sym_eps, pick_backend(sym_backend, rho.dim()), l);
      emit(report.to_json(), sym_format, out);
      return 0;
    }
    if (asym->parsed()) {
      const auto rho = load_state(asym_rho);
      const auto sigma = load_state(asym_sigma);
      SearchLimits l = limits;
      l.n_max = asym_nmax;
      const auto report = n_star_asymmetric(rho, sigma, asym_eps, asym_delta, asym_gamma,
                                            pick_backend(asym_backend, rho.dim()), l);
      emit(report.to_json(), asym_format, out);
      return 0;
    }
    if (mary_sc->parsed()) {
      const auto ens = Ensemble::from_data(load_ensemble(mary_sc_ens));
      const auto report = n_star_mary(ens, mary_sc_eps, limits);
      emit(report.to_json(), mary_sc_format, out);
      return 0;
    }
    if (my->parsed()) return cmd_mary(my_ens, my_n, my_method, my_tol, my_iters, my_format, out);
    if (fc->parsed())
      return cmd_fuchs_caves(fc_rho, fc_sigma, fc_p,
                             fc_has_n ? std::optional<int>(fc_n) : std::nullopt, fc_format,
                             out);
    if (fg->parsed()) return cmd_fig_compare(fg_points, fg_format, out);
    if (st->parsed()) return cmd_selftest(st_pairs, st_seed, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "error: no command executed\n";
  return 2;
}

}  // namespace qht::cli
