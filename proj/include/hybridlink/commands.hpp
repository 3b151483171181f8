#pragma once

#include "hybridlink/csv.hpp"
#include "hybridlink/hybrid_states.hpp"
#include "hybridlink/qkd.hpp"
#include "hybridlink/scenario.hpp"
#include "hybridlink/swap_protocol.hpp"
#include "hybridlink/threads.hpp"

#include <sstream>

namespace hybridlink {

namespace detail {

inline const std::set<std::string> kParamKeys = {
    "alpha", "T", "L_km", "loss_db_per_km", "eta_h", "eta_o", "eta_d", "p", "cv_dim"};

inline std::set<std::string> with_params(std::set<std::string> extra) {
  extra.insert(kParamKeys.begin(), kParamKeys.end());
  return extra;
}

inline ProtocolParams params_from_scenario(const Scenario& s) {
  ProtocolParams p;
  p.alpha = s.number("alpha", 0.5);
  p.loss_db_per_km = s.number("loss_db_per_km", 0.2);
  if (s.has("T")) p.T = s.number("T", 0.0);
  if (s.has("L_km")) {
    p.T.reset();
    p.L = s.number("L_km", 0.0);
  }
  if (!p.T && !p.L) p.L = 100.0;
  p.eta_h = s.number("eta_h", 0.55);
  p.eta_o = s.number("eta_o", 0.8);
  p.eta_d = s.number("eta_d", 1.0);
  p.p = s.number("p", std::numbers::pi / 2.0);
  return p;
}

inline void record_params(ResultTable& t, const ProtocolParams& p) {
  t.meta("alpha", p.alpha);
  if (p.T) t.meta("T", *p.T);
  if (p.L) {
    t.meta("L_km", *p.L);
    t.meta("loss_db_per_km", p.loss_db_per_km);
  }
  t.meta("eta_h", p.eta_h);
  t.meta("eta_o", p.eta_o);
  t.meta("eta_d", p.eta_d);
  t.meta("p", p.p);
}

inline std::string list_to_string(const std::vector<double>& v) {
  std::ostringstream out;
  for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << format_number(v[i]);
  return out.str();
}

}  // namespace detail

// Lossy hybrid-state entanglement vs alpha, one column per loss fraction R.
inline ResultTable cmd_fig2(const Scenario& s) {
  s.validate_keys({"alpha_grid", "loss_fractions"});
  const auto grid = s.grid("alpha_grid", {0.01, 2.0, 200}).points();
  const auto rs = s.list("loss_fractions", {0.0, 0.25, 0.5, 0.75, 0.9});
  ResultTable t;
  t.meta("command", "fig2");
  t.meta("loss_fractions", detail::list_to_string(rs));
  t.headers.push_back("alpha");
  for (double r : rs) t.headers.push_back("logneg_R" + format_short(r));
  t.rows.assign(grid.size(), {});
  parallel_for(static_cast<long>(grid.size()), [&](long i) {
    std::vector<double> row{grid[i]};
    for (double r : rs) row.push_back(lossy_he_logneg(grid[i], r));
    t.rows[i] = std::move(row);
  });
  return t;
}

// Post-swap entanglement vs alpha at fixed total distances.
inline ResultTable cmd_alpha_sweep(const Scenario& s) {
  s.validate_keys(detail::with_params({"alpha_grid", "distances_km"}));
  const auto grid = s.grid("alpha_grid", {0.01, 1.5, 150}).points();
  const auto dists = s.list("distances_km", {50.0, 100.0, 150.0, 200.0});
  ProtocolParams base = detail::params_from_scenario(s);
  ResultTable t;
  t.meta("command", "alpha-sweep");
  t.meta("distances_km", detail::list_to_string(dists));
  detail::record_params(t, base);
  t.headers.push_back("alpha");
  for (double d : dists) t.headers.push_back("eff_logneg_L" + format_short(d));
  t.rows.assign(grid.size(), {});
  parallel_for(static_cast<long>(grid.size()), [&](long i) {
    std::vector<double> row{grid[i]};
    for (double d : dists) {
      ProtocolParams p = base;
      p.alpha = grid[i];
      p.T.reset();
      p.L = d;
      row.push_back(effective_logneg(p));
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

// Post-swap entanglement vs distance, one column per alpha.
inline ResultTable cmd_distance_sweep(const Scenario& s) {
  s.validate_keys(detail::with_params({"distance_grid", "alphas"}));
  const auto grid = s.grid("distance_grid", {0.0, 300.0, 301}).points();
  const auto alphas = s.list("alphas", {0.5, 0.6, 0.8});
  ProtocolParams base = detail::params_from_scenario(s);
  ResultTable t;
  t.meta("command", "distance-sweep");
  t.meta("alphas", detail::list_to_string(alphas));
  detail::record_params(t, base);
  t.headers.push_back("L_km");
  for (double a : alphas) t.headers.push_back("eff_logneg_a" + format_short(a));
  t.rows.assign(grid.size(), {});
  parallel_for(static_cast<long>(grid.size()), [&](long i) {
    std::vector<double> row{grid[i]};
    for (double a : alphas) {
      ProtocolParams p = base;
      p.alpha = a;
      p.T.reset();
      p.L = grid[i];
      row.push_back(effective_logneg(p));
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

// Maximum distance vs alpha, one column per key-rate target.
inline ResultTable cmd_fig5(const Scenario& s) {
  s.validate_keys(detail::with_params({"alpha_grid", "r_targets"}));
  const auto grid = s.grid("alpha_grid", {0.05, 1.5, 59}).points();
  const auto targets = s.list("r_targets", {1e-6, 1e-8, 1e-10});
  ProtocolParams base = detail::params_from_scenario(s);
  ResultTable t;
  t.meta("command", "fig5");
  t.meta("r_targets", detail::list_to_string(targets));
  detail::record_params(t, base);
  t.headers.push_back("alpha");
  for (double r : targets) t.headers.push_back("L_max_r" + format_short(r));
  t.rows.assign(grid.size(), {});
  parallel_for(static_cast<long>(grid.size()), [&](long i) {
    std::vector<double> row{grid[i]};
    for (double rt : targets) {
      ProtocolParams p = base;
      p.alpha = grid[i];
      const auto m = max_distance(rt, p);
      row.push_back(m.found ? m.L_max_km : 0.0);
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

// Key rate vs distance, one column per detector efficiency.
inline ResultTable cmd_fig6(const Scenario& s) {
  s.validate_keys(detail::with_params({"distance_grid", "eta_d_list"}));
  const auto grid = s.grid("distance_grid", {0.0, 300.0, 301}).points();
  const auto etas = s.list("eta_d_list", {0.97, 0.95, 0.90});
  ProtocolParams base = detail::params_from_scenario(s);
  ResultTable t;
  t.meta("command", "fig6");
  t.meta("eta_d_list", detail::list_to_string(etas));
  detail::record_params(t, base);
  t.headers.push_back("L_km");
  for (double e : etas) t.headers.push_back("key_rate_etad" + format_short(e));
  t.rows.assign(grid.size(), {});
  parallel_for(static_cast<long>(grid.size()), [&](long i) {
    std::vector<double> row{grid[i]};
    for (double e : etas) {
      ProtocolParams p = base;
      p.eta_d = e;
      p.T.reset();
      p.L = grid[i];
      row.push_back(key_rate(p).r);
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

// Channel fidelity (pure loss vs thermal loss) vs transmittance.
inline ResultTable cmd_fidelity(const Scenario& s) {
  s.validate_keys({"T_grid", "n_bars", "alpha"});
  const auto grid = s.grid("T_grid", {0.01, 1.0, 100}).points();
  const auto nbars = s.list("n_bars", {0.01, 0.05, 0.1});
  const double alpha = s.number("alpha", 0.5);
  ResultTable t;
  t.meta("command", "fidelity");
  t.meta("alpha", alpha);
  t.meta("n_bars", detail::list_to_string(nbars));
  t.headers.push_back("T");
  for (double n : nbars) t.headers.push_back("fidelity_nbar" + format_short(n));
  t.rows.assign(grid.size(), {});
  parallel_for(static_cast<long>(grid.size()), [&](long i) {
    std::vector<double> row{grid[i]};
    for (double n : nbars) row.push_back(channel_fidelity(grid[i], n, alpha));
    t.rows[i] = std::move(row);
  });
  return t;
}

// Single-point evaluation of every protocol quantity.
inline ResultTable cmd_point(const Scenario& s) {
  s.validate_keys(detail::with_params({}));
  ProtocolParams p = detail::params_from_scenario(s);
  const AnalyticSwapResult a = analytic_final_state(p);
  const KeyRateBreakdown k = key_rate(p);
  ResultTable t;
  t.meta("command", "point");
  detail::record_params(t, p);
  t.headers = {"h",  "P0",      "shared_logneg", "effective_logneg",
               "I_AB", "chi_AE", "key_rate"};
  t.rows.push_back({a.h, a.P0, shared_logneg(a.h), a.P0 * shared_logneg(a.h), k.I_AB,
                    k.chi_AE, k.r});
  return t;
}

struct OracleCheckSuite {
  std::string name;
  double max_deviation;
  double tolerance;
  bool pass;
};

struct OracleCheckReport {
  std::vector<OracleCheckSuite> suites;
  bool all_pass;

  std::string to_text() const {
    std::ostringstream out;
    for (const auto& s : suites)
      out << (s.pass ? "PASS" : "FAIL") << "  " << s.name
          << "  max_dev=" << format_number(s.max_deviation)
          << "  tol=" << format_number(s.tolerance) << "\n";
    out << (all_pass ? "all suites pass" : "some suites FAILED") << "\n";
    return out.str();
  }
};

// Analytic-vs-oracle equivalence suites at desk scale.
inline OracleCheckReport cmd_oracle_check(const Scenario& s) {
  s.validate_keys({"cv_dim"});
  const int cv = s.integer("cv_dim", 24);
  OracleCheckReport rep;

  {  // swap state + heralding probability, grid over (alpha, T, detector pair)
    double dev = 0.0;
    const std::vector<double> alphas{0.3, 0.5, 0.8}, ts{0.05, 0.1, 0.5};
    const std::vector<std::pair<double, double>> dets{{0.8, 0.55}, {1.0, 1.0}};
    std::vector<double> devs(alphas.size() * ts.size() * dets.size(), 0.0);
    parallel_for(static_cast<long>(devs.size()), [&](long i) {
      const double a = alphas[i % 3];
      const double T = ts[(i / 3) % 3];
      const auto [eo, eh] = dets[i / 9];
      ProtocolParams p;
      p.alpha = a;
      p.T = T;
      p.eta_o = eo;
      p.eta_h = eh;
      const AnalyticSwapResult an = analytic_final_state(p);
      const OracleSwapResult orc = oracle_final_state(p, cv);
      double d = (orc.rho_shared.mat - an.rho_shared).cwiseAbs().maxCoeff();
      d = std::max(d, std::abs(orc.P0 - an.P0));
      devs[i] = d;
    });
    for (double d : devs) dev = std::max(dev, d);
    rep.suites.push_back({"swap-state-and-heralding", dev, 1e-6, dev < 1e-6});
  }
  {  // lossy hybrid state: 4x4 embedding vs Fock computation
    double dev = 0.0;
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9})
      for (double r : {0.0, 0.25, 0.5, 0.75, 0.9})
        dev = std::max(dev, std::abs(lossy_he_logneg(a, r) - lossy_he_logneg_fock(a, r, cv)));
    rep.suites.push_back({"lossy-he-logneg", dev, 1e-8, dev < 1e-8});
  }
  {  // homodyne weight vs closed forms: real coherent states give the vacuum
     // Gaussian e^{-p^2}/sqrt(pi) at any efficiency; a lossy single photon
     // gives [(1 - eta) + 2 eta p^2] e^{-p^2}/sqrt(pi)
    double dev = 0.0;
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    for (double p : {0.0, 0.6, 1.3})
      for (double eta : {1.0, 0.55}) {
        const auto coh = homodyne_project(
            density(tensor(fock_ket(0, 2, "q"), coherent_ket(0.5, cv, "m"))), "m", p, eta);
        const double wc = std::exp(-p * p) * inv_sqrt_pi;
        dev = std::max(dev, std::abs(coh.weight - wc) / wc);
        const auto one = homodyne_project(
            density(tensor(fock_ket(0, 2, "q"), fock_ket(1, cv, "m"))), "m", p, eta);
        const double w1 = ((1.0 - eta) + 2.0 * eta * p * p) * std::exp(-p * p) * inv_sqrt_pi;
        dev = std::max(dev, std::abs(one.weight - w1));
      }
    rep.suites.push_back({"homodyne-weight", dev, 1e-8, dev < 1e-8});
  }
  {  // fidelity closed form vs trace-overlap oracle
    double dev = 0.0;
    for (double T : {0.2, 0.5, 0.8})
      for (double nb : {0.005, 0.01, 0.02}) {
        const auto orc = channel_fidelity_oracle(T, nb, 0.5, cv);
        dev = std::max(dev, std::abs(channel_fidelity(T, nb, 0.5) - orc.trace_overlap));
      }
    rep.suites.push_back({"channel-fidelity", dev, 1e-6, dev < 1e-6});
  }
  rep.all_pass = true;
  for (const auto& suite : rep.suites) rep.all_pass = rep.all_pass && suite.pass;
  return rep;
}

}  // namespace hybridlink
