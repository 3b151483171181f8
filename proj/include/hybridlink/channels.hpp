#pragma once

#include "hybridlink/fock.hpp"

namespace hybridlink {

struct ChannelSpec {
  double transmittance = 1.0;
  double n_bar = 0.0;

  double x() const { return n_bar / (1.0 + n_bar); }
};

struct DetectorSpec {
  double eta_onoff = 1.0;
  double eta_homodyne = 1.0;
  double eta_dv = 1.0;
};

// Beam splitter with a vacuum ancilla, ancilla traced out. |alpha> -> |sqrt(T) alpha>.
inline DensityOperator pure_loss(const DensityOperator& rho, const std::string& mode,
                                 double T) {
  if (T < 0.0 || T > 1.0) throw std::domain_error("pure_loss: T outside [0,1]");
  const int d = rho.reg.dim(rho.reg.index_of(mode));
  DensityOperator vac = density(fock_ket(0, d, "_loss"));
  DensityOperator joint = tensor_rho(rho, vac);
  joint = apply_pair_op(joint, mode, "_loss", beamsplitter_pair(T, d, d));
  std::vector<std::string> keep;
  for (int i = 0; i < rho.reg.num_modes(); ++i) keep.push_back(rho.reg.label(i));
  return partial_trace(joint, keep);
}

// Loss on one mode of a pure state; the ancilla stays in the register under
// the given label so that later stages can trace it together with others.
inline StateVector pure_loss_keep_ancilla(const StateVector& s, const std::string& mode,
                                          double T, const std::string& ancilla_label) {
  const int d = s.reg.dim(s.reg.index_of(mode));
  StateVector joint = tensor(s, fock_ket(0, d, ancilla_label));
  return apply_beamsplitter(joint, mode, ancilla_label, T);
}

inline DensityOperator thermal_state(double n_bar, int dim) {
  const double x = n_bar / (1.0 + n_bar);
  Eigen::VectorXd w(dim);
  double t = 1.0;
  for (int n = 0; n < dim; ++n) {
    w(n) = t;
    t *= x;
  }
  w /= w.sum();
  DensityOperator rho{FockRegister({{"_th", dim}}), Matrix::Zero(dim, dim)};
  rho.mat.diagonal() = w.cast<Complex>();
  return rho;
}

struct ThermalLossResult {
  DensityOperator state;
  double ancilla_tail;  // Boltzmann weight beyond the ancilla truncation
};

inline ThermalLossResult thermal_loss(const DensityOperator& rho, const std::string& mode,
                                      double T, double n_bar) {
  if (T < 0.0 || T > 1.0) throw std::domain_error("thermal_loss: T outside [0,1]");
  const int d = rho.reg.dim(rho.reg.index_of(mode));
  const double x = n_bar / (1.0 + n_bar);
  // ancilla dim: at least the mode dim so that the splitter acts without
  // truncation artifacts, and large enough that x^dim < 1e-12
  int ad = d;
  if (x > 0.0) {
    const int needed = static_cast<int>(std::ceil(std::log(1e-12) / std::log(x))) + 1;
    ad = std::max(ad, needed);
  }
  const double tail = (x > 0.0) ? std::pow(x, ad) : 0.0;
  DensityOperator joint = tensor_rho(rho, thermal_state(n_bar, ad));
  joint = apply_pair_op(joint, mode, "_th", beamsplitter_pair(T, d, ad));
  std::vector<std::string> keep;
  for (int i = 0; i < rho.reg.num_modes(); ++i) keep.push_back(rho.reg.label(i));
  return {partial_trace(joint, keep), tail};
}

struct OnOffPovm {
  Matrix no_click;
  Matrix click;
};

// E_noclick = sum_n (1-eta)^n |n><n|, E_click = I - E_noclick.
inline OnOffPovm onoff_povm(double eta, int dim) {
  if (eta < 0.0 || eta > 1.0) throw std::domain_error("onoff_povm: eta outside [0,1]");
  Matrix nc = Matrix::Zero(dim, dim);
  double w = 1.0;
  for (int n = 0; n < dim; ++n) {
    nc(n, n) = w;
    w *= (1.0 - eta);
  }
  return {nc, Matrix::Identity(dim, dim) - nc};
}

// Inefficient homodyne at outcome p as a single mode contraction: BS(eta)
// with a vacuum ancilla followed by the <P| kernel on the transmitted arm.
// Rows of the returned matrix are the Kraus bras indexed by the ancilla
// photon number; applying K to the mode and tracing the resulting index
// realizes the conditional (unnormalized) map.
inline Matrix homodyne_kraus(double p, double eta, int dim) {
  const Matrix u = beamsplitter_pair(eta, dim, dim);
  const Eigen::RowVectorXcd kern = homodyne_kernel(p, dim);
  Matrix k = Matrix::Zero(dim, dim);  // (ancilla out, mode in)
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n) {
      Complex acc = 0.0;
      for (int t = 0; t < dim; ++t) acc += kern(t) * u(t * dim + m, n * dim + 0);
      k(m, n) = acc;
    }
  return k;
}

struct HomodyneResult {
  DensityOperator state;  // unnormalized, homodyned mode removed
  double weight;
};

inline HomodyneResult homodyne_project(const DensityOperator& rho, const std::string& mode,
                                       double p, double eta) {
  const int d = rho.reg.dim(rho.reg.index_of(mode));
  const Matrix k = homodyne_kraus(p, eta, d);
  DensityOperator mapped = apply_mode_op(rho, mode, k);
  std::vector<std::string> keep;
  for (int i = 0; i < rho.reg.num_modes(); ++i)
    if (rho.reg.label(i) != mode) keep.push_back(rho.reg.label(i));
  DensityOperator out = partial_trace(mapped, keep);
  const double weight = out.trace_real();
  return {std::move(out), weight};
}

// Same contraction on a pure state: the homodyned mode is replaced by the
// ancilla index, to be traced out together with other ancillas later.
inline StateVector homodyne_contract(const StateVector& s, const std::string& mode,
                                     double p, double eta) {
  const int k = s.reg.index_of(mode);
  return apply_mode_op(s, k, homodyne_kraus(p, eta, s.reg.dim(k)));
}

}  // namespace hybridlink
