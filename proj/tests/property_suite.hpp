#pragma once

#include "hybridlink/channels.hpp"
#include "hybridlink/commands.hpp"
#include "hybridlink/hybrid_states.hpp"
#include "hybridlink/qkd.hpp"
#include "hybridlink/swap_protocol.hpp"

#include <iostream>
#include <random>
#include <sstream>

namespace hybridlink::testing {

inline constexpr unsigned kFuzzSeed = 20260823;

struct FuzzReport {
  int cases = 0;
  int failures = 0;
  std::ostringstream log;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
      ++failures;
      log << "FAIL: " << what << "\n";
    }
  }
};

inline StateVector random_state(std::mt19937& rng, const std::vector<Mode>& modes) {
  FockRegister reg(modes);
  std::normal_distribution<double> gauss;
  Vector amp(reg.total_dim());
  for (long i = 0; i < amp.size(); ++i) amp(i) = Complex(gauss(rng), gauss(rng));
  amp /= amp.norm();
  return {reg, amp};
}

// Randomized runs of every module-level invariant; deterministic under the
// fixed seed.
inline FuzzReport run_property_fuzz(unsigned seed = kFuzzSeed, int rounds = 25) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dim_small(2, 4);
  FuzzReport rep;

  for (int round = 0; round < rounds; ++round) {
    {  // partial trace: trace preserving, insensitive to traced-mode order
      StateVector s = random_state(
          rng, {{"x", dim_small(rng)}, {"y", dim_small(rng)}, {"z", dim_small(rng)}});
      DensityOperator rho = density(s);
      DensityOperator red = partial_trace(rho, {"y"});
      rep.check(std::abs(red.trace_real() - 1.0) < 1e-12, "partial_trace preserves trace");
      DensityOperator via_pure = ptrace_pure(s, {"y"});
      rep.check((red.mat - via_pure.mat).cwiseAbs().maxCoeff() < 1e-12,
                "partial_trace matches pure-state reduction");
    }
    {  // beam splitter unitarity on small registers
      const int d = dim_small(rng);
      FockRegister reg({{"u", d}, {"v", d}});
      const Matrix u = beamsplitter_unitary(unit(rng), "u", "v", reg);
      rep.check((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()))
                        .cwiseAbs()
                        .maxCoeff() < 1e-9,
                "beamsplitter unitarity");
    }
    {  // on-off detector model equals BS + ideal detector
      const int d = 12;
      const double eta = unit(rng);
      StateVector s = random_state(rng, {{"m", d}});
      const OnOffPovm povm = onoff_povm(eta, d);
      const double p_direct = (povm.click * density(s).mat).trace().real();
      StateVector lossy = pure_loss_keep_ancilla(s, "m", eta, "anc");
      DensityOperator rm = ptrace_pure(lossy, {"m"});
      const OnOffPovm ideal = onoff_povm(1.0, d);
      const double p_bs = (ideal.click * rm.mat).trace().real();
      rep.check(std::abs(p_direct - p_bs) < 1e-10, "on-off detector model equivalence");
      rep.check((povm.click + povm.no_click - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() ==
                    0.0,
                "POVM completeness");
    }
    {  // loss composition on coherent inputs
      const double t1 = unit(rng), t2 = unit(rng), a = 0.3 + 0.5 * unit(rng);
      DensityOperator rho = density(coherent_ket(a, 20, "m"));
      DensityOperator once = pure_loss(pure_loss(rho, "m", t2), "m", t1);
      DensityOperator direct = pure_loss(rho, "m", t1 * t2);
      rep.check((once.mat - direct.mat).cwiseAbs().maxCoeff() < 1e-9,
                "pure_loss composition");
      rep.check(is_hermitian(once.mat) && min_eigenvalue(once.mat) > -1e-9,
                "channel output is a valid state");
    }
    {  // log negativity: Schmidt form and local-phase invariance
      const int da = 3, db = 4;
      StateVector s = random_state(rng, {{"x", da}, {"y", db}});
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
          m(s.amp.data(), da, db);
      Eigen::JacobiSVD<Matrix> svd(m);
      const double en_schmidt = std::log2(std::pow(svd.singularValues().sum(), 2));
      const double en = log_negativity(density(s), {{"x"}, {"y"}});
      rep.check(std::abs(en - std::max(0.0, en_schmidt)) < 1e-8,
                "log_negativity equals Schmidt closed form");
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      Matrix rot = Matrix::Zero(db, db);
      for (int n = 0; n < db; ++n) rot(n, n) = std::polar(1.0, phi * n);
      StateVector s2 = apply_mode_op(s, 1, rot);
      rep.check(std::abs(log_negativity(density(s2), {{"x"}, {"y"}}) - en) < 1e-9,
                "log_negativity invariant under local phase rotation");
    }
    {  // analytic swap state: support, partial-transpose spectrum, p-independence
      ProtocolParams p;
      p.alpha = 0.2 + 0.6 * unit(rng);
      p.T = 0.05 + 0.9 * unit(rng);
      p.eta_h = unit(rng);
      p.eta_o = unit(rng);
      p.p = 3.0 * unit(rng);
      const AnalyticSwapResult r = analytic_final_state(p);
      rep.check(r.h > 0.0 && r.h <= 1.0 && r.P0 >= 0.0 && r.P0 < 0.5,
                "analytic swap ranges");
      DensityOperator rho{FockRegister({{"a1", 2}, {"b1", 2}}), r.rho_shared};
      Matrix pt(4, 4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          pt.block(i * 2, j * 2, 2, 2) = r.rho_shared.block(i * 2, j * 2, 2, 2).transpose();
      Eigen::SelfAdjointEigenSolver<Matrix> es(pt);
      Eigen::Vector4d ev = es.eigenvalues();
      std::sort(ev.data(), ev.data() + 4);
      rep.check(std::abs(ev(0) + r.h / 2.0) < 1e-10 && std::abs(ev(1) - r.h / 2.0) < 1e-10 &&
                    std::abs(ev(2) - 0.5) < 1e-10 && std::abs(ev(3) - 0.5) < 1e-10,
                "partial-transpose spectrum {1/2, 1/2, +-h/2}");
      ProtocolParams p2 = p;
      p2.p = 3.0 * unit(rng);
      rep.check(std::abs(shared_logneg(analytic_final_state(p2).h) - shared_logneg(r.h)) <
                    1e-12,
                "shared entanglement independent of homodyne outcome");
    }
    {  // P0 monotone in alpha^2, T, eta_o; key rate behavior
      ProtocolParams p;
      p.alpha = 0.3 + 0.4 * unit(rng);
      p.T = 0.1 + 0.5 * unit(rng);
      p.eta_o = 0.3 + 0.6 * unit(rng);
      p.eta_d = 0.95;
      const double base = analytic_final_state(p).P0;
      ProtocolParams pa = p;
      pa.alpha += 0.01;
      ProtocolParams ptr_ = p;
      ptr_.T = *p.T + 0.01;
      ProtocolParams pe = p;
      pe.eta_o += 0.01;
      rep.check(analytic_final_state(pa).P0 > base && analytic_final_state(ptr_).P0 > base &&
                    analytic_final_state(pe).P0 > base,
                "P0 strictly increasing in alpha^2, T, eta_o");
      const KeyRateBreakdown k = key_rate(p);
      rep.check(k.r >= 0.0 && k.I_AB >= 0.0 && k.I_AB <= 1.0 && k.chi_AE >= 0.0,
                "key-rate breakdown ranges");
    }
  }
  {  // energy bookkeeping: each unitary stage conserves total photon number
    const int cv = 12;
    const double alpha = 0.4, T = 0.3;
    StateVector psi = tensor(make_he_state({alpha, cv, "a1", "a2"}),
                             make_he_state({alpha, cv, "b1", "b2"}));
    auto total = [](const StateVector& s) {
      double n = 0.0;
      for (int i = 0; i < s.reg.num_modes(); ++i) n += mean_photon(s, s.reg.label(i));
      return n;
    };
    const double n0 = total(psi);
    psi = pure_loss_keep_ancilla(psi, "a2", T, "fa");
    rep.check(std::abs(total(psi) - n0) < 1e-8, "loss splitter conserves photon number");
    psi = pure_loss_keep_ancilla(psi, "b2", T, "fb");
    rep.check(std::abs(total(psi) - n0) < 1e-8, "second loss splitter conserves photon number");
    psi = apply_beamsplitter(psi, "a2", "b2", 0.5);
    rep.check(std::abs(total(psi) - n0) < 1e-8, "swap-node splitter conserves photon number");
  }
  {  // derivative of the key rate in distance is negative wherever r > 0
    ProtocolParams p;
    p.alpha = 0.5;
    p.eta_d = 0.95;
    for (double L : {50.0, 100.0, 150.0, 200.0}) {
      ProtocolParams lo = p, hi = p;
      lo.L = L;
      hi.L = L + 1.0;
      const double rlo = key_rate(lo).r, rhi = key_rate(hi).r;
      if (rlo > 0.0) rep.check(rhi < rlo, "key rate decreasing in distance");
    }
  }
  {  // generation pipeline output is a valid normalized state
    const GenerationResult g = generate_he_pipeline(0.4, 0.5, 20);
    rep.check(std::abs(g.output_state.trace_real() - 1.0) < 1e-10 &&
                  is_hermitian(g.output_state.mat) &&
                  min_eigenvalue(g.output_state.mat) > -1e-9,
              "generation pipeline emits a valid density operator");
    rep.check(g.success_prob > 0.0 && g.success_prob < 1.0 && g.fidelity_ideal > 0.0 &&
                  g.fidelity_ideal <= 1.0,
              "generation pipeline ranges");
  }
  {  // lossy-state entanglement: analytic equals Fock, monotone in loss
    double prev = 1e9;
    for (double r : {0.0, 0.3, 0.6, 0.9}) {
      const double en = lossy_he_logneg(0.5, r);
      rep.check(std::abs(en - lossy_he_logneg_fock(0.5, r, 20)) < 1e-8,
                "lossy-state entanglement analytic vs Fock");
      rep.check(en <= prev + 1e-12 && en >= 0.0 && en <= 1.0,
                "entanglement non-increasing in loss");
      prev = en;
    }
  }
  {  // truncation convergence: doubling dims moves scalars by < 1e-8
    ProtocolParams p;
    p.alpha = 0.5;
    p.T = 0.1;
    const OracleSwapResult a = oracle_final_state(p, 12);
    const OracleSwapResult b = oracle_final_state(p, 24);
    rep.check(std::abs(a.P0 - b.P0) < 1e-8 &&
                  (a.rho_shared.mat - b.rho_shared.mat).cwiseAbs().maxCoeff() < 1e-8,
              "truncation convergence of oracle scalars");
  }
  {  // determinism: identical scenario gives byte-identical CSV
    Scenario s;
    s.apply_override("distance_grid={\"start\":0,\"stop\":100,\"count\":11}");
    const std::string once = cmd_fig6(s).to_csv();
    const std::string twice = cmd_fig6(s).to_csv();
    rep.check(once == twice && !once.empty(), "cmd_fig6 byte-identical across runs");
  }
  return rep;
}

}  // namespace hybridlink::testing
