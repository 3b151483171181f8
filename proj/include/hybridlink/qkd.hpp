#pragma once

#include "hybridlink/channels.hpp"
#include "hybridlink/hybrid_states.hpp"
#include "hybridlink/optim.hpp"
#include "hybridlink/swap_protocol.hpp"

namespace hybridlink {

inline double xlog2(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// I(A:B) for the sign-correlated outcome distribution with detector
// efficiency eta_d: p00 = 1-eta_d, p01 = p10 = eta_d/2.
inline double mutual_information(double eta_d) {
  if (eta_d < 0.0 || eta_d > 1.0) throw std::domain_error("mutual_information: eta_d");
  return (2.0 - eta_d) - (xlog2(2.0 - eta_d) - xlog2(1.0 - eta_d));
}

inline double holevo_bound(double h, double eta_d) {
  if (h < 0.0 || h > 1.0) throw std::domain_error("holevo_bound: h outside [0,1]");
  if (eta_d < 0.0 || eta_d > 1.0) throw std::domain_error("holevo_bound: eta_d");
  return 1.0 - 0.5 * (xlog2(1.0 + h) + xlog2(1.0 - h)) -
         0.5 * (xlog2(2.0 - eta_d) - xlog2(1.0 - eta_d));
}

struct KeyRateBreakdown {
  double I_AB;
  double chi_AE;
  double P0;
  double r;      // clamped at 0
  double r_raw;  // P0 (I - chi) before clamping
};

inline KeyRateBreakdown key_rate(const ProtocolParams& params) {
  const AnalyticSwapResult s = analytic_final_state(params);
  const double I = mutual_information(params.eta_d);
  const double chi = holevo_bound(s.h, params.eta_d);
  const double raw = s.P0 * (I - chi);
  return {I, chi, s.P0, std::max(0.0, raw), raw};
}

enum class Objective { KeyRate, EffectiveLogneg };

struct AlphaOptimum {
  double alpha_star;
  double value;
  bool found;  // false when the objective is flat zero on the range
};

// Coarse grid (step 0.01) then golden-section refinement to 1e-4.
inline AlphaOptimum optimize_alpha(Objective objective, ProtocolParams params,
                                   double alpha_lo = 0.01, double alpha_hi = 2.0) {
  auto eval = [&](double a) {
    ProtocolParams pt = params;
    pt.alpha = a;
    return objective == Objective::KeyRate ? key_rate(pt).r : effective_logneg(pt);
  };
  if (alpha_hi - alpha_lo < 1e-4) {
    const double mid = 0.5 * (alpha_lo + alpha_hi);
    return {mid, eval(mid), true};
  }
  double best_a = alpha_lo, best_v = -1.0;
  for (double a = alpha_lo; a <= alpha_hi + 1e-12; a += 0.01) {
    const double v = eval(a);
    if (v > best_v) {
      best_v = v;
      best_a = a;
    }
  }
  if (best_v <= 0.0) return {best_a, 0.0, false};
  const double lo = std::max(alpha_lo, best_a - 0.01);
  const double hi = std::min(alpha_hi, best_a + 0.01);
  const double a_star = golden_section_max(eval, lo, hi, 1e-4);
  return {a_star, eval(a_star), true};
}

struct MaxDistanceResult {
  double L_max_km;
  bool found;
};

// Largest distance with r >= r_target; bisection on [0, 1000] km.
inline MaxDistanceResult max_distance(double r_target, ProtocolParams params,
                                      double L_hi = 1000.0) {
  auto rate = [&](double L) {
    ProtocolParams pt = params;
    pt.T.reset();
    pt.L = L;
    return key_rate(pt).r;
  };
  if (rate(0.0) <= r_target) return {0.0, false};
  if (rate(L_hi) >= r_target) return {L_hi, true};
  auto f = [&](double L) { return rate(L) - r_target; };
  const auto root = bisect(f, 0.0, L_hi, 0.01);
  if (!root) return {0.0, false};
  return {*root, true};
}

// Trace overlap between the states after pure loss and after thermal loss
// with the same transmittance, closed form; x = n_bar/(1+n_bar).
inline double channel_fidelity(double T, double n_bar, double alpha) {
  if (T < 0.0 || T > 1.0) throw std::domain_error("channel_fidelity: T outside [0,1]");
  if (n_bar < 0.0) throw std::domain_error("channel_fidelity: n_bar < 0");
  const double x = n_bar / (1.0 + n_bar);
  const double expo = -2.0 * T * x * (1.0 - T) * alpha * alpha / (1.0 - T * x);
  const double ratio = (1.0 - x) / (1.0 - T * x);
  return std::exp(expo) * ratio * ratio;
}

struct ChannelFidelityOracle {
  double trace_overlap;  // tr[rho_loss rho_thermal] over both resource pairs
  double normalized;     // trace overlap / sqrt(purity_loss * purity_thermal)
};

// Brute force: one hybrid pair through pure loss, one through thermal loss,
// trace overlap computed in the truncated Fock space. The two resource
// pairs factorize, so the 4-mode overlap is the square of the per-pair one.
inline ChannelFidelityOracle channel_fidelity_oracle(double T, double n_bar, double alpha,
                                                     int cv_dim = 24) {
  StateVector he = make_he_state({alpha, cv_dim, "q", "c"});
  DensityOperator rho_loss = pure_loss(density(he), "c", T);
  DensityOperator rho_th = thermal_loss(density(he), "c", T, n_bar).state;
  const double ov = (rho_loss.mat * rho_th.mat).trace().real();
  const double p1 = (rho_loss.mat * rho_loss.mat).trace().real();
  const double p2 = (rho_th.mat * rho_th.mat).trace().real();
  return {ov * ov, (ov / std::sqrt(p1 * p2)) * (ov / std::sqrt(p1 * p2))};
}

}  // namespace hybridlink
