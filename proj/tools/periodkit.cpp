#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "periodkit/beam.hpp"
#include "periodkit/bounds.hpp"
#include "periodkit/checks.hpp"
#include "periodkit/galerkin.hpp"
#include "periodkit/json_writer.hpp"
#include "periodkit/mode_io.hpp"
#include "periodkit/spectral.hpp"
#include "periodkit/version.hpp"

namespace {

namespace pk = periodkit;
using pk::jsonw::Writer;

// Raised after check results were already printed; main maps it to exit 1.
struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned env_seed() {
  const char* s = std::getenv("PERIODKIT_SEED");
  if (!s || !*s) return 42;
  return static_cast<unsigned>(std::strtoul(s, nullptr, 10));
}

void print(const Writer& w) {
  std::fputs(w.str().c_str(), stdout);
  std::fputc('\n', stdout);
}

void open_envelope(Writer& w, const std::string& command) {
  w.begin_object();
  w.key("command");
  w.value(command);
}

void close_envelope(Writer& w) {
  w.key("version");
  w.value(pk::version);
  w.end_object();
}

void write_bound(Writer& w, const pk::bounds::BoundResult& r) {
  w.begin_object();
  w.key("lower_bound_T");
  w.value(r.lower_bound_T);
  w.key("method");
  w.value(pk::bounds::method_name(r.method));
  w.key("diagnostics");
  w.begin_object();
  for (const auto& [k, v] : r.diagnostics) {
    w.key(k);
    w.value(v);
  }
  w.end_object();
  w.end_object();
}

pk::bounds::DecayProfile parse_decay(const std::string& s) {
  const auto pos = s.find(':');
  const std::string kind = s.substr(0, pos);
  double val = 0.0;
  bool ok = pos != std::string::npos;
  if (ok) {
    try {
      std::size_t used = 0;
      val = std::stod(s.substr(pos + 1), &used);
      ok = used == s.size() - pos - 1;
    } catch (const std::exception&) {
      ok = false;
    }
  }
  if (!ok || (kind != "const" && kind != "power"))
    throw CLI::ValidationError("--m", "expected const:<c> or power:<beta>");
  if (kind == "const") return pk::bounds::DecayProfile::constant(val);
  // power:<beta> selects the analytic-scale weight m(t) = M_beta t^{-beta}.
  return pk::bounds::DecayProfile::power(pk::bounds::m_beta(val), val);
}

const char* branch_str(pk::spectral::RootBranch b) {
  switch (b) {
    case pk::spectral::RootBranch::real_distinct: return "real";
    case pk::spectral::RootBranch::complex_conjugate: return "complex";
    case pk::spectral::RootBranch::double_root: return "degenerate";
  }
  return "?";
}

void write_index_array(Writer& w, const std::vector<std::size_t>& idx) {
  w.begin_array();
  for (const std::size_t k : idx) w.value_int(static_cast<long long>(k));
  w.end_array();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "periodkit: lower bounds on the minimal period of nonstationary "
      "periodic solutions of dissipative evolution equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pk::version));

  // ---------------------------------------------------------------- bound --
  auto* bound = app.add_subcommand(
      "bound", "closed-form period lower bounds from Lipschitz data");
  bound->require_subcommand(1);

  double arg_L = 1.0, arg_beta = 0.0, arg_alpha = 1.0;
  double arg_T = 0.0, arg_mu0 = 0.0, arg_M = 1.0;
  std::string arg_m = "const:1";
  int arg_grid = 4096;

  auto* b_ode = bound->add_subcommand(
      "ode", "finite-dimensional bounds 2*pi/L (inner product) and 6/L (norm)");
  b_ode->add_option("--L", arg_L, "Lipschitz constant of the right-hand side")
      ->required();
  b_ode->callback([&] {
    const auto r = pk::bounds::ode_bounds(arg_L);
    Writer w;
    open_envelope(w, "bound.ode");
    w.key("inputs");
    w.begin_object();
    w.key("L");
    w.value(arg_L);
    w.end_object();
    w.key("results");
    w.begin_object();
    w.key("hilbert");
    write_bound(w, r.hilbert);
    w.key("banach");
    write_bound(w, r.banach);
    w.end_object();
    close_envelope(w);
    print(w);
  });

  auto* b_par = bound->add_subcommand(
      "parabolic", "bound (1/(L K_beta))^{1/(1-beta)} for the analytic scale");
  b_par->add_option("--L", arg_L, "Lipschitz constant of f from the beta-power domain")
      ->required();
  b_par->add_option("--beta", arg_beta, "fractional power in [0, 1)")->required();
  b_par->callback([&] {
    Writer w;
    open_envelope(w, "bound.parabolic");
    w.key("inputs");
    w.begin_object();
    w.key("L");
    w.value(arg_L);
    w.key("beta");
    w.value(arg_beta);
    w.end_object();
    w.key("results");
    w.begin_object();
    w.key("optimized");
    write_bound(w, pk::bounds::parabolic_bound({arg_L, arg_beta}));
    if (arg_beta > 0.0) {
      w.key("closed_form");
      write_bound(w, pk::bounds::parabolic_closed_form_bound({arg_L, arg_beta}));
      w.key("baseline");
      write_bound(w, pk::bounds::parabolic_baseline_bound({arg_L, arg_beta}));
    }
    w.end_object();
    close_envelope(w);
    print(w);
  });

  auto* b_hyp = bound->add_subcommand(
      "hyperbolic", "bound for the strongly damped system in the energy norm");
  b_hyp->add_option("--L", arg_L, "Lipschitz constant in the energy norm")
      ->required();
  b_hyp->add_option("--alpha", arg_alpha, "strong damping coefficient")->required();
  b_hyp->callback([&] {
    Writer w;
    open_envelope(w, "bound.hyperbolic");
    w.key("inputs");
    w.begin_object();
    w.key("L");
    w.value(arg_L);
    w.key("alpha");
    w.value(arg_alpha);
    w.end_object();
    w.key("results");
    w.begin_object();
    w.key("bound");
    write_bound(w, pk::bounds::hyperbolic_bound({arg_L, arg_alpha}));
    w.end_object();
    close_envelope(w);
    print(w);
  });

  auto* b_abs = bound->add_subcommand(
      "abstract",
      "certificate scan for a uniform semigroup profile: can a T-periodic "
      "nonstationary solution exist?");
  b_abs->add_option("--L", arg_L, "Lipschitz constant")->required();
  b_abs->add_option("--T", arg_T, "candidate period")->required();
  b_abs->add_option("--mu0", arg_mu0, "splitting threshold rate");
  b_abs->add_option("--M", arg_M, "semigroup growth constant on the slow part");
  b_abs->add_option("--m", arg_m,
                    "decay weight: const:<c> or power:<beta> (analytic-scale "
                    "weight M_beta t^-beta)");
  b_abs->add_option("--grid", arg_grid, "number of rate samples");
  b_abs->callback([&] {
    auto profile = pk::bounds::SemigroupProfile::uniform(arg_mu0, arg_M);
    profile.decay = parse_decay(arg_m);
    const auto cert =
        pk::bounds::period_certificate(profile, arg_L, arg_T, arg_grid);
    Writer w;
    open_envelope(w, "bound.abstract");
    w.key("inputs");
    w.begin_object();
    w.key("L");
    w.value(arg_L);
    w.key("T");
    w.value(arg_T);
    w.key("mu0");
    w.value(arg_mu0);
    w.key("M");
    w.value(arg_M);
    w.key("m");
    w.value(arg_m);
    w.key("grid");
    w.value_int(arg_grid);
    w.end_object();
    w.key("results");
    w.begin_object();
    w.key("certified");
    w.value(cert.certified());
    w.key("violated_at");
    if (cert.certified())
      w.value(*cert.violated_at);
    else
      w.null();
    w.key("rhs_min");
    w.value(cert.rhs_min);
    w.key("rhs_argmin");
    w.value(cert.rhs_argmin);
    w.end_object();
    close_envelope(w);
    print(w);
  });

  // ------------------------------------------------------------- spectral --
  auto* sp = app.add_subcommand(
      "spectral", "root and norm calculus of a damped mode system");
  std::string sp_file;
  double sp_mu = 0.0;
  long sp_samples = 0;
  sp->add_option("file", sp_file,
                 "JSON file {\"alpha\": <num>, \"lambdas\": [<nums>]}")
      ->required();
  sp->add_option("--mu", sp_mu, "splitting rate, must exceed 2/alpha");
  sp->add_option("--samples", sp_samples,
                 "cross-check each closed-form norm with a brute-force scan "
                 "of this size");
  sp->callback([&] {
    const auto ms = pk::mode_io::load_mode_system(sp_file);
    Writer w;
    open_envelope(w, "spectral");
    w.key("inputs");
    w.begin_object();
    w.key("file");
    w.value(sp_file);
    w.key("alpha");
    w.value(ms.alpha);
    w.key("n_modes");
    w.value_int(static_cast<long long>(ms.lambdas.size()));
    if (sp->count("--mu")) {
      w.key("mu");
      w.value(sp_mu);
    }
    w.end_object();
    w.key("results");
    w.begin_object();
    w.key("critical_rate");
    w.value(pk::spectral::critical_rate(ms.alpha));
    w.key("critical_lambda");
    w.value(pk::spectral::critical_lambda(ms.alpha));
    w.key("modes");
    w.begin_array();
    for (const double lambda : ms.lambdas) {
      const auto xi = pk::spectral::xi_pair(lambda, ms.alpha);
      w.begin_object();
      w.key("lambda");
      w.value(lambda);
      w.key("branch");
      w.value(branch_str(xi.branch));
      w.key("xi_minus_re");
      w.value(xi.xi_minus.real());
      w.key("xi_minus_im");
      w.value(xi.xi_minus.imag());
      w.key("xi_plus_re");
      w.value(xi.xi_plus.real());
      w.key("xi_plus_im");
      w.value(xi.xi_plus.imag());
      w.key("projection_norm");
      if (xi.branch == pk::spectral::RootBranch::double_root)
        w.null();
      else
        w.value(pk::spectral::projection_norm(lambda, ms.alpha).norm);
      w.key("block_norm");
      w.value(pk::spectral::block_operator_norm(lambda, ms.alpha));
      if (sp_samples > 0) {
        w.key("scan_projection_norm");
        if (xi.branch == pk::spectral::RootBranch::double_root)
          w.null();
        else
          w.value(pk::spectral::brute_force_projection_norm(lambda, ms.alpha,
                                                            sp_samples));
        w.key("scan_block_norm");
        w.value(pk::spectral::brute_force_block_norm(lambda, ms.alpha, sp_samples));
      }
      w.end_object();
    }
    w.end_array();
    if (sp->count("--mu")) {
      const auto dec = pk::spectral::mu_decomposition(ms, sp_mu);
      const auto split = pk::spectral::split_projection_norms(ms, sp_mu);
      const auto slow = pk::spectral::slow_operator_norm(ms, sp_mu);
      w.key("splitting");
      w.begin_object();
      w.key("mu");
      w.value(sp_mu);
      w.key("stable");
      write_index_array(w, dec.stable);
      w.key("degenerate");
      write_index_array(w, dec.degenerate);
      w.key("slow_real");
      write_index_array(w, dec.slow_real);
      w.key("slow_complex");
      write_index_array(w, dec.slow_complex);
      w.key("projection_norm_stable");
      w.value(split.norm_stable);
      w.key("projection_norm_slow");
      w.value(split.norm_slow);
      w.key("projection_bound");
      w.value(split.bound);
      w.key("slow_operator_norm");
      w.value(slow.norm);
      w.key("slow_operator_bound");
      w.value(slow.bound);
      w.key("decay_check");
      if (dec.stable.empty())
        w.null();
      else
        w.value(pk::spectral::semigroup_decay_check(ms, dec, {0.0, 0.1, 1.0, 10.0},
                                                    env_seed()));
      w.end_object();
    }
    w.end_object();
    close_envelope(w);
    print(w);
  });

  // ------------------------------------------------------------- simulate --
  auto* sim = app.add_subcommand(
      "simulate", "integrate a manufactured periodic orbit and verify its bound");
  sim->require_subcommand(1);
  double sim_lambda = 1.0, sim_omega = 1.0, sim_amp = 1.0;
  double sim_beta = 0.0, sim_alpha = 1.0, sim_periods = 0.0;
  long sim_steps = 0;
  std::string sim_traj, sim_report;

  auto add_common = [&](CLI::App* sc, bool parabolic) {
    sc->add_option("--lambda", sim_lambda, "mode eigenvalue")->required();
    sc->add_option("--omega", sim_omega, "orbit angular frequency")->required();
    sc->add_option("--amplitude", sim_amp, "orbit radius");
    if (parabolic)
      sc->add_option("--beta", sim_beta, "fractional power in [0, 1)");
    else
      sc->add_option("--alpha", sim_alpha, "strong damping coefficient")
          ->required();
    sc->add_option("--steps", sim_steps, "RK4 steps per period (default 2000)");
    sc->add_option("--periods", sim_periods,
                   "integration horizon in periods (default 1.5)");
    sc->add_option("--traj", sim_traj, "write the trajectory CSV here");
    sc->add_option("--report", sim_report, "also write the JSON report here");
  };

  auto run_simulate = [&](bool parabolic) {
    const auto spec =
        parabolic
            ? pk::galerkin::make_parabolic_orbit(sim_lambda, sim_omega, sim_amp,
                                                 sim_beta)
            : pk::galerkin::make_hyperbolic_orbit(sim_lambda, sim_omega, sim_amp,
                                                  sim_alpha);
    pk::galerkin::SimConfig cfg;
    if (sim_steps > 0) cfg.dt = spec.period_exact / static_cast<double>(sim_steps);
    if (sim_periods > 0.0) cfg.t_max = sim_periods * spec.period_exact;
    const auto rep = pk::galerkin::verify_bound(spec, cfg);
    if (!sim_traj.empty())
      pk::galerkin::write_csv(pk::galerkin::integrate(spec, cfg), sim_traj);
    Writer w;
    open_envelope(w, parabolic ? "simulate.parabolic" : "simulate.hyperbolic");
    w.key("inputs");
    w.begin_object();
    w.key("lambda");
    w.value(sim_lambda);
    w.key("omega");
    w.value(sim_omega);
    w.key("amplitude");
    w.value(sim_amp);
    w.key(parabolic ? "beta" : "alpha");
    w.value(parabolic ? sim_beta : sim_alpha);
    w.end_object();
    w.key("results");
    w.begin_object();
    w.key("period_exact");
    w.value(rep.period_exact);
    w.key("observed_period");
    w.value(rep.observed_period);
    w.key("lipschitz_exact");
    w.value(rep.lipschitz_exact);
    w.key("bound");
    w.value(rep.bound);
    w.key("margin");
    w.value(rep.margin);
    w.key("pass");
    w.value(rep.pass);
    w.key("trajectory_csv");
    if (sim_traj.empty())
      w.null();
    else
      w.value(sim_traj);
    w.end_object();
    close_envelope(w);
    print(w);
    if (!sim_report.empty()) {
      std::FILE* f = std::fopen(sim_report.c_str(), "w");
      if (!f) throw std::runtime_error("cannot open " + sim_report);
      std::fputs(w.str().c_str(), f);
      std::fputc('\n', f);
      std::fclose(f);
    }
  };

  add_common(sim->add_subcommand("parabolic", "first-order orbit on one complex mode"),
             true);
  add_common(sim->add_subcommand("hyperbolic",
                                 "second-order damped orbit on one complex mode"),
             false);
  sim->get_subcommand("parabolic")->callback([&] { run_simulate(true); });
  sim->get_subcommand("hyperbolic")->callback([&] { run_simulate(false); });

  // --------------------------------------------------------------- verify --
  auto* ver = app.add_subcommand("verify", "run the built-in self-check battery");
  bool ver_quick = false, ver_list = false;
  std::string ver_check;
  unsigned ver_seed = env_seed();
  ver->add_flag("--quick", ver_quick, "smaller sample sizes");
  ver->add_flag("--list", ver_list, "list check names and exit");
  ver->add_option("--check", ver_check, "run one named check");
  ver->add_option("--seed", ver_seed, "RNG seed (or set PERIODKIT_SEED)");
  ver->callback([&] {
    if (ver_list) {
      for (const auto& n : pk::checks::check_names())
        std::printf("%s\n", n.c_str());
      return;
    }
    const pk::checks::CheckOptions opt{ver_quick, ver_seed};
    std::vector<pk::checks::CheckResult> results;
    if (ver_check.empty())
      results = pk::checks::run_all(opt);
    else
      results.push_back(pk::checks::run_check(ver_check, opt));
    int failed = 0;
    for (const auto& r : results) {
      std::printf("%s  %-28s  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  r.detail.c_str());
      failed += r.pass ? 0 : 1;
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failed,
                results.size());
    if (failed > 0)
      throw check_failure(std::to_string(failed) + " self-check(s) failed");
  });

  // -------------------------------------------------------------- compare --
  auto* cmp = app.add_subcommand(
      "compare", "tabulate the parabolic constants and bounds across beta");
  std::string cmp_betas;
  double cmp_L = 1.0;
  cmp->add_option("--betas", cmp_betas, "range start:stop:step, inside [0, 1)")
      ->required();
  cmp->add_option("--L", cmp_L, "Lipschitz constant");
  cmp->callback([&] {
    double b0 = 0.0, b1 = 0.0, db = 0.0;
    if (std::sscanf(cmp_betas.c_str(), "%lf:%lf:%lf", &b0, &b1, &db) != 3 ||
        db <= 0.0 || b0 < 0.0 || b1 >= 1.0 || b1 < b0)
      throw CLI::ValidationError("--betas", "expected start:stop:step in [0, 1)");
    Writer w;
    open_envelope(w, "compare");
    w.key("inputs");
    w.begin_object();
    w.key("betas");
    w.value(cmp_betas);
    w.key("L");
    w.value(cmp_L);
    w.end_object();
    w.key("results");
    w.begin_array();
    for (double beta = b0; beta <= b1 + 1e-12; beta += db) {
      const auto kb = pk::bounds::k_beta(beta);
      const auto opt = pk::bounds::parabolic_bound({cmp_L, beta});
      w.begin_object();
      w.key("beta");
      w.value(beta);
      w.key("K_beta");
      w.value(kb.k_beta);
      w.key("eta_star");
      w.value(kb.eta_star);
      w.key("bound");
      w.value(opt.lower_bound_T);
      if (beta > 0.0) {
        const auto cf = pk::bounds::parabolic_closed_form_bound({cmp_L, beta});
        const auto bl = pk::bounds::parabolic_baseline_bound({cmp_L, beta});
        w.key("bound_closed_form");
        w.value(cf.lower_bound_T);
        w.key("bound_baseline");
        w.value(bl.lower_bound_T);
        w.key("gain_over_baseline");
        w.value(opt.lower_bound_T / bl.lower_bound_T);
      } else {
        w.key("bound_closed_form");
        w.null();
        w.key("bound_baseline");
        w.null();
        w.key("gain_over_baseline");
        w.null();
      }
      w.end_object();
    }
    w.end_array();
    close_envelope(w);
    print(w);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const pk::mode_io::mode_io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const check_failure& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
