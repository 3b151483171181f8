#include <catch2/catch_amalgamated.hpp>

#include "hybridlink/channels.hpp"
#include "hybridlink/hybrid_states.hpp"

using namespace hybridlink;

TEST_CASE("pure loss limits") {
  const DensityOperator rho = density(coherent_ket(0.5, 16, "m"));
  const DensityOperator same = pure_loss(rho, "m", 1.0);
  REQUIRE((same.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-10);
  const DensityOperator vac = pure_loss(rho, "m", 0.0);
  REQUIRE(std::abs(vac.mat(0, 0).real() - 1.0) < 1e-12);
  REQUIRE_THROWS_AS(pure_loss(rho, "m", 1.5), std::domain_error);
}

TEST_CASE("pure loss damps the hybrid-state coherence by exp(-2 R alpha^2)") {
  const double alpha = 0.5, R = 0.5;
  const StateVector he = make_he_state({alpha, 24, "q", "c"});
  const DensityOperator lossy = pure_loss(density(he), "c", 1.0 - R);
  // DV coherence block <0|rho|1>: single singular value damp/2
  Matrix block(24, 24);
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) block(i, j) = lossy.mat(i, 24 + j);
  Eigen::JacobiSVD<Matrix> svd(block);
  const double damp = std::exp(-2.0 * R * alpha * alpha);
  REQUIRE(std::abs(damp - 0.778801) < 1e-6);
  REQUIRE(std::abs(2.0 * svd.singularValues()(0) - damp) < 1e-8);
}

TEST_CASE("thermal loss") {
  const DensityOperator rho = density(coherent_ket(0.5, 24, "m"));
  const auto same = thermal_loss(rho, "m", 1.0, 0.2);
  REQUIRE((same.state.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-10);
  const auto vs_pure = thermal_loss(rho, "m", 0.7, 0.0);
  REQUIRE((vs_pure.state.mat - pure_loss(rho, "m", 0.7).mat).cwiseAbs().maxCoeff() < 1e-12);

  const auto out = thermal_loss(rho, "m", 0.6, 0.2);
  REQUIRE(out.ancilla_tail < 1e-12);
  REQUIRE(std::abs(mean_photon(out.state, "m") - 0.23) < 1e-6);
}

TEST_CASE("on-off detector effects") {
  const auto ideal = onoff_povm(1.0, 8);
  REQUIRE(std::abs(ideal.no_click(0, 0).real() - 1.0) < 1e-15);
  REQUIRE(ideal.no_click.diagonal().tail(7).cwiseAbs().maxCoeff() < 1e-15);
  const auto blind = onoff_povm(0.0, 8);
  REQUIRE(blind.click.cwiseAbs().maxCoeff() < 1e-15);

  const auto povm = onoff_povm(0.8, 24);
  const double p_click = (povm.click * density(coherent_ket(0.5, 24, "m")).mat).trace().real();
  REQUIRE(std::abs(p_click - (1.0 - std::exp(-0.2))) < 1e-9);
  REQUIRE(std::abs(1.0 - std::exp(-0.2) - 0.181269) < 1e-6);
}

TEST_CASE("homodyne projection") {
  const int d = 24;
  // real-amplitude coherent state: weight is the vacuum Gaussian e^{-p^2}/sqrt(pi)
  // for any efficiency, since loss keeps the amplitude real
  const double p = 0.8, a = 0.5;
  for (double eta : {1.0, 0.55}) {
    const auto res = homodyne_project(
        density(tensor(fock_ket(0, 2, "q"), coherent_ket(a, d, "m"))), "m", p, eta);
    const double expect = std::exp(-p * p) / std::sqrt(std::numbers::pi);
    REQUIRE(std::abs(res.weight - expect) / expect < 1e-9);
  }

  // lossy single photon: weight is [(1 - eta) + 2 eta p^2] e^{-p^2}/sqrt(pi)
  for (double eta : {1.0, 0.7, 0.0}) {
    const auto res = homodyne_project(
        density(tensor(fock_ket(0, 2, "q"), fock_ket(1, 8, "m"))), "m", p, eta);
    const double expect = ((1.0 - eta) + 2.0 * eta * p * p) * std::exp(-p * p) /
                          std::sqrt(std::numbers::pi);
    REQUIRE(std::abs(res.weight - expect) < 1e-12);
  }

  // projecting one half of a product state leaves the other factor unchanged
  const StateVector other = coherent_ket(0.3, d, "x");
  const auto prod = homodyne_project(density(tensor(other, coherent_ket(0.7, d, "m"))),
                                     "m", 0.4, 0.55);
  Matrix cond = prod.state.mat / prod.weight;
  REQUIRE((cond - density(other).mat).cwiseAbs().maxCoeff() < 1e-10);
}
