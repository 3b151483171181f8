#pragma once

#include "hybridlink/channels.hpp"
#include "hybridlink/fock.hpp"
#include "hybridlink/hybrid_states.hpp"

#include <optional>

namespace hybridlink {

inline double distance_to_transmittance(double L_km, double loss_db_per_km) {
  if (L_km < 0.0 || loss_db_per_km <= 0.0)
    throw std::domain_error("distance_to_transmittance: bad arguments");
  // per-link distance is L/2 (swap node midway)
  return std::pow(10.0, -loss_db_per_km * (L_km / 2.0) / 10.0);
}

inline double transmittance_to_distance(double T, double loss_db_per_km) {
  if (T <= 0.0 || T > 1.0) throw std::domain_error("transmittance_to_distance: T outside (0,1]");
  return -10.0 * std::log10(T) * 2.0 / loss_db_per_km;
}

struct ProtocolParams {
  double alpha = 0.5;
  std::optional<double> T;  // per-link transmittance
  std::optional<double> L;  // total distance, km
  double loss_db_per_km = 0.2;
  double eta_h = 0.55;
  double eta_o = 0.8;
  double eta_d = 1.0;
  double p = std::numbers::pi / 2.0;  // homodyne outcome

  double link_transmittance() const {
    if (T) return *T;
    if (L) return distance_to_transmittance(*L, loss_db_per_km);
    throw std::invalid_argument("ProtocolParams: neither T nor L set");
  }

  void validate() const {
    if (alpha < 0.0) throw std::domain_error("alpha must be >= 0");
    for (double e : {eta_h, eta_o, eta_d})
      if (e < 0.0 || e > 1.0) throw std::domain_error("efficiency outside [0,1]");
    const double t = link_transmittance();
    if (t < 0.0 || t > 1.0) throw std::domain_error("transmittance outside [0,1]");
  }
};

struct AnalyticSwapResult {
  double h;        // coherence weight e^{-4(1 - T eta_h) alpha^2}
  double g_phase;  // phase of the |01><10| coefficient: 4 sqrt(T eta_h) alpha p
  double P0;       // heralding probability (1 - e^{-eta_o T alpha^2})^2 / 2
  Matrix rho_shared;  // 4x4 in basis {|00>,|01>,|10>,|11>} of (a1, b1)
};

inline AnalyticSwapResult analytic_final_state(const ProtocolParams& params) {
  params.validate();
  const double T = params.link_transmittance();
  const double a2 = params.alpha * params.alpha;
  const double h = std::exp(-4.0 * (1.0 - T * params.eta_h) * a2);
  const double g_phase = 4.0 * std::sqrt(T * params.eta_h) * params.alpha * params.p;
  const double P0 = 0.5 * std::pow(1.0 - std::exp(-params.eta_o * T * a2), 2);
  const Complex g = std::polar(1.0, g_phase);
  Matrix rho = Matrix::Zero(4, 4);
  rho(1, 1) = 0.5;
  rho(2, 2) = 0.5;
  rho(1, 2) = 0.5 * h * g;
  rho(2, 1) = 0.5 * h * std::conj(g);
  return {h, g_phase, P0, std::move(rho)};
}

struct OracleSwapResult {
  DensityOperator rho_shared;  // normalized, on (a1, b1)
  double P0;
};

// Full truncated-Fock pipeline: two hybrid resource states, per-link loss,
// balanced mixing at the swap node, a coherent reference mode for the
// click-click heralding through imperfect on-off detectors, and the
// inefficient homodyne projection at outcome p.
//
// The heralding measurement acts on modes disjoint from the homodyne, so it
// is contracted into a single positive operator on the node mode; tracing
// order does not affect the result (covered by tests).
inline OracleSwapResult oracle_final_state(const ProtocolParams& params, int cv_dim = 24) {
  params.validate();
  const double T = params.link_transmittance();
  const double circulating = 2.0 * std::sqrt(T) * params.alpha;
  if (coherent_truncation_error(circulating, cv_dim) > 1e-8)
    throw std::runtime_error("oracle_final_state: cv_dim too small for circulating amplitude");

  StateVector alice = make_he_state({params.alpha, cv_dim, "a1", "a2"});
  StateVector bob = make_he_state({params.alpha, cv_dim, "b1", "b2"});
  alice = pure_loss_keep_ancilla(alice, "a2", T, "fa");
  bob = pure_loss_keep_ancilla(bob, "b2", T, "fb");
  StateVector psi = tensor(alice, bob);
  psi = apply_beamsplitter(psi, "a2", "b2", 0.5);

  // click-click effect on the node mode: conjugate E_click x E_click through
  // the balanced splitter and close with the coherent reference |sqrt(2T) alpha>
  const Matrix u2 = beamsplitter_pair(0.5, cv_dim, cv_dim);
  const OnOffPovm povm = onoff_povm(params.eta_o, cv_dim);
  Vector ee(static_cast<long>(cv_dim) * cv_dim);
  for (int m = 0; m < cv_dim; ++m)
    for (int n = 0; n < cv_dim; ++n)
      ee(static_cast<long>(m) * cv_dim + n) = povm.click(m, m) * povm.click(n, n);
  const Matrix conj_effect = u2.adjoint() * ee.asDiagonal() * u2;
  const Vector gamma = coherent_ket(std::sqrt(2.0 * T) * params.alpha, cv_dim, "g").amp;
  Matrix effect(cv_dim, cv_dim);  // on a2 alone
  for (int n = 0; n < cv_dim; ++n)
    for (int np = 0; np < cv_dim; ++np) {
      Complex acc = 0.0;
      for (int m = 0; m < cv_dim; ++m)
        for (int mp = 0; mp < cv_dim; ++mp)
          acc += std::conj(gamma(m)) * gamma(mp) *
                 conj_effect(static_cast<long>(n) * cv_dim + m,
                             static_cast<long>(np) * cv_dim + mp);
      effect(n, np) = acc;
    }

  const DensityOperator rho_node = ptrace_pure(psi, {"a2"});
  const double P0 = (effect * rho_node.mat).trace().real();

  psi = homodyne_contract(psi, "b2", params.p, params.eta_h);
  DensityOperator rho3 = ptrace_pure(psi, {"a1", "b1", "a2"});

  Matrix shared = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      shared(i, j) =
          (effect * rho3.mat.block(static_cast<long>(i) * cv_dim,
                                   static_cast<long>(j) * cv_dim, cv_dim, cv_dim))
              .trace();
  shared /= shared.trace().real();
  DensityOperator out{FockRegister({{"a1", 2}, {"b1", 2}}), std::move(shared)};
  return {std::move(out), P0};
}

inline double shared_logneg(double h) {
  if (h < 0.0 || h > 1.0 + 1e-12) throw std::domain_error("shared_logneg: h outside [0,1]");
  return std::log2(1.0 + h);
}

inline double effective_logneg(const ProtocolParams& params) {
  const AnalyticSwapResult r = analytic_final_state(params);
  return r.P0 * shared_logneg(r.h);
}

enum class SweepAxis { Distance, Alpha };

struct SweepRow {
  double x;
  double shared_logneg;
  double effective_logneg;
  double P0;
  double h;
};

inline std::vector<SweepRow> sweep_entanglement(SweepAxis axis, const std::vector<double>& grid,
                                                ProtocolParams params) {
  std::vector<SweepRow> rows(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    ProtocolParams pt = params;
    if (axis == SweepAxis::Distance) {
      pt.T.reset();
      pt.L = grid[i];
    } else {
      pt.alpha = grid[i];
    }
    const AnalyticSwapResult r = analytic_final_state(pt);
    rows[i] = {grid[i], shared_logneg(r.h), r.P0 * shared_logneg(r.h), r.P0, r.h};
  }
  return rows;
}

}  // namespace hybridlink
