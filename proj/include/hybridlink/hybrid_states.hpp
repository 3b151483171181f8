#pragma once

#include "hybridlink/channels.hpp"
#include "hybridlink/fock.hpp"
#include "hybridlink/optim.hpp"

namespace hybridlink {

struct HEStateSpec {
  double alpha = 0.5;
  int cv_dim = 24;
  std::string dv_label = "q";
  std::string cv_label = "c";
};

// (|0>|alpha> + |1>|-alpha>)/sqrt(2) on (dv, cv).
inline StateVector make_he_state(const HEStateSpec& spec) {
  if (spec.alpha < 0.0) throw std::invalid_argument("make_he_state: alpha must be >= 0");
  StateVector plus = tensor(fock_ket(0, 2, spec.dv_label),
                            coherent_ket(spec.alpha, spec.cv_dim, spec.cv_label));
  StateVector minus = tensor(fock_ket(1, 2, spec.dv_label),
                             coherent_ket(-spec.alpha, spec.cv_dim, spec.cv_label));
  StateVector he{plus.reg, (plus.amp + minus.amp) / std::sqrt(2.0)};
  he.amp /= he.amp.norm();
  return he;
}

struct LossyHEState {
  double alpha;
  double loss_fraction;  // R
  Matrix gram_matrix;    // 4x4 in basis {|0>,|1>} x {orthonormalized |b>, |-b>}
};

// State after sending the CV half through loss R, expressed exactly in a
// 2x2 orthonormal basis of the span of |b>, |-b> with b = sqrt(1-R) alpha.
// The DV coherence block carries the damping factor e^{-2 R alpha^2}.
inline LossyHEState lossy_he_analytic(double alpha, double R) {
  if (R < 0.0 || R > 1.0) throw std::domain_error("lossy_he_analytic: R outside [0,1]");
  const double beta = std::sqrt(1.0 - R) * alpha;
  const double s = std::exp(-2.0 * beta * beta);  // <b|-b>
  const double damp = std::exp(-2.0 * R * alpha * alpha);
  // coordinates in the orthonormal pair (e1, e2)
  Eigen::Vector2d vp(1.0, 0.0);                                   // |b>
  Eigen::Vector2d vm(s, std::sqrt(std::max(0.0, 1.0 - s * s)));   // |-b>
  Matrix rho = Matrix::Zero(4, 4);
  auto put = [&rho](int dv_r, const Eigen::Vector2d& cr, int dv_c, const Eigen::Vector2d& cc,
                    double w) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) rho(dv_r * 2 + i, dv_c * 2 + j) += w * cr(i) * cc(j);
  };
  put(0, vp, 0, vp, 0.5);
  put(1, vm, 1, vm, 0.5);
  put(0, vp, 1, vm, 0.5 * damp);
  put(1, vm, 0, vp, 0.5 * damp);
  return {alpha, R, std::move(rho)};
}

// E_N across the DV/CV split of the 4x4 embedding.
inline double lossy_he_logneg(double alpha, double R) {
  if (alpha == 0.0) return 0.0;
  const Matrix& rho = lossy_he_analytic(alpha, R).gram_matrix;
  Matrix pt(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      pt.block(i * 2, j * 2, 2, 2) = rho.block(i * 2, j * 2, 2, 2).transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt);
  const double en = std::log2(es.eigenvalues().cwiseAbs().sum());
  return (en > -1e-9 && en < 0.0) ? 0.0 : en;
}

// Brute-force path: truncated Fock state through the loss channel.
inline double lossy_he_logneg_fock(double alpha, double R, int cv_dim = 24) {
  StateVector he = make_he_state({alpha, cv_dim, "q", "c"});
  StateVector lossy = pure_loss_keep_ancilla(he, "c", 1.0 - R, "_loss");
  DensityOperator rho = ptrace_pure(lossy, {"q", "c"});
  return log_negativity(rho, {{"q"}, {"c"}});
}

// Amplification factor: maximize |<g alpha|b^dag|alpha>|^2 / <alpha|b b^dag|alpha>.
// The objective has its interior maximum at g(g-1) = 1/alpha^2.
inline double amplification_factor(double alpha, int dim = 48) {
  const Matrix ad = annihilation_op(dim).adjoint();
  const StateVector base = coherent_ket(alpha, dim, "m");
  const Vector added = ad * base.amp;
  const double denom = added.squaredNorm();
  auto objective = [&](double g) {
    return std::norm(coherent_ket(g * alpha, dim, "m").amp.dot(added)) / denom;
  };
  const double hi = 2.0 / (alpha * alpha) + 2.0;
  // coarse grid, then golden-section refinement
  double best_g = 1.0, best_v = -1.0;
  const int steps = 400;
  for (int i = 0; i <= steps; ++i) {
    const double g = 1.0 + (hi - 1.0) * i / steps;
    const double v = objective(g);
    if (v > best_v) {
      best_v = v;
      best_g = g;
    }
  }
  const double lo = std::max(1.0, best_g - (hi - 1.0) / steps);
  const double up = std::min(hi, best_g + (hi - 1.0) / steps);
  return golden_section_max(objective, lo, up, 1e-6);
}

struct GenerationResult {
  DensityOperator output_state;  // on (dv, cv), normalized
  double success_prob;           // exact heralding probability of the circuit
  double success_prob_approx;    // 2 T (1-T) (1+a^2)/(2+a^2) from the idealized algebra
  double fidelity_ideal;         // overlap with the target hybrid state at alpha_f
  double g;
  double alpha_f;
};

// Heralded generation circuit: two photon-addition beam splitters with
// transmittance T_add, an erasure beam splitter at tau = (1+a^2)/(2+a^2)
// with outputs measured by photon counters, post-selection on a single
// click in the erasure port paired with the vacuum arm, then displacement
// by -(alpha + g alpha)/2 on the CV mode.
inline GenerationResult generate_he_pipeline(double alpha, double T_add, int cv_dim = 30) {
  if (T_add <= 0.0 || T_add >= 1.0)
    throw std::domain_error("generate_he_pipeline: T_add outside (0,1)");
  const double g = amplification_factor(alpha);
  const double tau = (1.0 + alpha * alpha) / (2.0 + alpha * alpha);
  const int da = 3;  // single-photon arms: at most 2 photons circulate

  StateVector psi = tensor(std::vector<StateVector>{
      fock_ket(0, da, "a"), fock_ket(1, da, "c"),
      coherent_ket(alpha, cv_dim, "b"), fock_ket(1, da, "d")});
  psi = apply_beamsplitter(psi, "a", "c", T_add);
  psi = apply_beamsplitter(psi, "b", "d", T_add);
  // erasure splitter: matrix orientation fixed so the click heralds the
  // target superposition with a positive relative sign
  psi = apply_beamsplitter(psi, "c", "d", 1.0 - tau);

  // project <1|_c <0|_d
  const int ci = psi.reg.index_of("c");
  psi = apply_mode_op(psi, ci, fock_ket(1, da, "c").amp.adjoint());
  const int di = psi.reg.index_of("d");
  psi = apply_mode_op(psi, di, fock_ket(0, da, "d").amp.adjoint());
  const double prob = psi.norm2();
  psi.amp /= psi.amp.norm();

  const double shift = -(alpha + g * alpha) / 2.0;
  psi = apply_mode_op(psi, psi.reg.index_of("b"), displacement_op(shift, cv_dim));

  const double alpha_f = (g - 1.0) * alpha / 2.0;
  StateVector target = tensor(fock_ket(0, da, "a"), coherent_ket(alpha_f, cv_dim, "b"));
  StateVector target2 = tensor(fock_ket(1, da, "a"), coherent_ket(-alpha_f, cv_dim, "b"));
  target.amp = (target.amp + target2.amp) / std::sqrt(2.0);
  target.amp /= target.amp.norm();
  const double fid = std::norm(target.amp.dot(psi.amp));

  const double approx =
      2.0 * T_add * (1.0 - T_add) * (1.0 + alpha * alpha) / (2.0 + alpha * alpha);
  DensityOperator out = ptrace_pure(psi, {"a", "b"});
  return {std::move(out), prob, approx, fid, g, alpha_f};
}

}  // namespace hybridlink
