#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridlink {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

struct Mode {
  std::string label;
  int dim;
};

// Ordered list of labeled modes with per-mode truncation dimensions.
// Mode 0 is the slowest-varying index of the flattened amplitude vector.
class FockRegister {
public:
  FockRegister() = default;

  explicit FockRegister(std::vector<Mode> modes) : modes_(std::move(modes)) {
    std::set<std::string> seen;
    for (const auto& m : modes_) {
      if (m.dim < 1) throw std::invalid_argument("mode dim must be >= 1: " + m.label);
      if (!seen.insert(m.label).second)
        throw std::invalid_argument("duplicate mode label: " + m.label);
    }
  }

  int num_modes() const { return static_cast<int>(modes_.size()); }
  int dim(int i) const { return modes_.at(i).dim; }
  const std::string& label(int i) const { return modes_.at(i).label; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < num_modes(); ++i)
      if (modes_[i].label == label) return i;
    throw std::invalid_argument("unknown mode label: " + label);
  }

  long total_dim() const {
    long d = 1;
    for (const auto& m : modes_) d *= m.dim;
    return d;
  }

  // Row-major strides: stride(i) = product of dims of modes after i.
  std::vector<long> strides() const {
    std::vector<long> s(modes_.size());
    long acc = 1;
    for (int i = num_modes() - 1; i >= 0; --i) {
      s[i] = acc;
      acc *= modes_[i].dim;
    }
    return s;
  }

  FockRegister without(int i) const {
    std::vector<Mode> m = modes_;
    m.erase(m.begin() + i);
    return FockRegister(std::move(m));
  }

  FockRegister subset(const std::vector<int>& order) const {
    std::vector<Mode> m;
    m.reserve(order.size());
    for (int i : order) m.push_back(modes_.at(i));
    return FockRegister(std::move(m));
  }

private:
  std::vector<Mode> modes_;
};

struct StateVector {
  FockRegister reg;
  Vector amp;

  double norm2() const { return amp.squaredNorm(); }
};

struct DensityOperator {
  FockRegister reg;
  Matrix mat;

  double trace_real() const { return mat.trace().real(); }
};

inline Complex overlap(const StateVector& a, const StateVector& b) {
  if (a.amp.size() != b.amp.size()) throw std::invalid_argument("overlap: dimension mismatch");
  return a.amp.dot(b.amp);
}

inline StateVector fock_ket(int n, int dim, const std::string& label = "m") {
  if (n < 0 || n >= dim) throw std::out_of_range("fock_ket: n out of range");
  StateVector s{FockRegister({{label, dim}}), Vector::Zero(dim)};
  s.amp(n) = 1.0;
  return s;
}

// Poisson weight missing from the truncated expansion of |alpha>.
inline double coherent_truncation_error(Complex alpha, int dim) {
  const double mu = std::norm(alpha);
  double term = std::exp(-mu), kept = term;
  for (int n = 1; n < dim; ++n) {
    term *= mu / n;
    kept += term;
  }
  return std::max(0.0, 1.0 - kept);
}

// Truncated coherent state, renormalized to unit norm.
inline StateVector coherent_ket(Complex alpha, int dim, const std::string& label = "m") {
  if (dim < 2) throw std::invalid_argument("coherent_ket: dim must be >= 2");
  Vector c(dim);
  Complex an = 1.0;
  double lognorm = -0.5 * std::norm(alpha);
  c(0) = std::exp(lognorm);
  for (int n = 1; n < dim; ++n) {
    an *= alpha / std::sqrt(static_cast<double>(n));
    c(n) = std::exp(lognorm) * an;
  }
  c /= c.norm();
  return {FockRegister({{label, dim}}), c};
}

inline StateVector tensor(std::span<const StateVector> states) {
  std::vector<Mode> modes;
  Vector amp = Vector::Ones(1);
  for (const auto& s : states) {
    for (int i = 0; i < s.reg.num_modes(); ++i)
      modes.push_back({s.reg.label(i), s.reg.dim(i)});
    Vector next(amp.size() * s.amp.size());
    for (long i = 0; i < amp.size(); ++i)
      next.segment(i * s.amp.size(), s.amp.size()) = amp(i) * s.amp;
    amp = std::move(next);
  }
  return {FockRegister(std::move(modes)), std::move(amp)};
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  const StateVector arr[] = {a, b};
  return tensor(std::span<const StateVector>(arr, 2));
}

inline DensityOperator tensor_rho(std::span<const DensityOperator> ops) {
  std::vector<Mode> modes;
  Matrix m = Matrix::Ones(1, 1);
  for (const auto& op : ops) {
    for (int i = 0; i < op.reg.num_modes(); ++i)
      modes.push_back({op.reg.label(i), op.reg.dim(i)});
    const long ra = m.rows(), rb = op.mat.rows();
    Matrix next(ra * rb, ra * rb);
    for (long i = 0; i < ra; ++i)
      for (long j = 0; j < ra; ++j)
        next.block(i * rb, j * rb, rb, rb) = m(i, j) * op.mat;
    m = std::move(next);
  }
  return {FockRegister(std::move(modes)), std::move(m)};
}

inline DensityOperator tensor_rho(const DensityOperator& a, const DensityOperator& b) {
  const DensityOperator arr[] = {a, b};
  return tensor_rho(std::span<const DensityOperator>(arr, 2));
}

inline DensityOperator density(const StateVector& s) {
  return {s.reg, s.amp * s.amp.adjoint()};
}

inline Matrix annihilation_op(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Matrix number_op(int dim) {
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = k;
  return n;
}

// exp(beta a^dag - conj(beta) a), truncated.
inline Matrix displacement_op(Complex beta, int dim) {
  const Matrix a = annihilation_op(dim);
  Matrix gen = beta * a.adjoint() - std::conj(beta) * a;
  return gen.exp();
}

// Two-mode beam splitter on the joint (dim_i x dim_j) space:
// a -> sqrt(T) a + sqrt(1-T) b,  b -> -sqrt(1-T) a + sqrt(T) b,
// so U |alpha>|0> = |sqrt(T) alpha>|-sqrt(1-T) alpha>.
// exp(theta (a^dag b - a b^dag)) computed sector by sector: the generator
// conserves total photon number, so it is block diagonal over m + n even
// after truncation, and each tridiagonal block exponentiates cheaply.
inline Matrix beamsplitter_pair(double T, int dim_i, int dim_j) {
  if (T < 0.0 || T > 1.0) throw std::domain_error("beamsplitter: T outside [0,1]");
  const double theta = std::acos(std::sqrt(T));
  const Complex iu(0.0, 1.0);
  Matrix u = Matrix::Zero(dim_i * dim_j, dim_i * dim_j);
  for (int s = 0; s <= dim_i + dim_j - 2; ++s) {
    const int m_lo = std::max(0, s - dim_j + 1);
    const int m_hi = std::min(dim_i - 1, s);
    const int k = m_hi - m_lo + 1;
    // h = i G restricted to the sector, Hermitian tridiagonal
    Matrix h = Matrix::Zero(k, k);
    for (int t = 0; t + 1 < k; ++t) {
      const int m = m_lo + t;
      const double g = theta * std::sqrt((m + 1.0) * (s - m));
      h(t + 1, t) = iu * g;
      h(t, t + 1) = -iu * g;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(k);
    for (int q = 0; q < k; ++q) phases(q) = std::exp(-iu * es.eigenvalues()(q));
    const Matrix us =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) {
        const int mr = m_lo + r, mc = m_lo + c;
        u(mr * dim_j + (s - mr), mc * dim_j + (s - mc)) = us(r, c);
      }
  }
  return u;
}

namespace detail {

// Gather indices that reorder the flattened amplitudes so that modes
// `order` become the register order.
inline std::vector<long> permutation_indices(const FockRegister& reg,
                                             const std::vector<int>& order) {
  const auto strides = reg.strides();
  const long n = reg.total_dim();
  std::vector<long> new_strides(order.size());
  long acc = 1;
  for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k) {
    new_strides[k] = acc;
    acc *= reg.dim(order[k]);
  }
  std::vector<long> idx(n);
  std::vector<int> digits(reg.num_modes(), 0);
  for (long r = 0; r < n; ++r) {
    long old_index = 0;
    long rem = r;
    for (size_t k = 0; k < order.size(); ++k) {
      const long d = rem / new_strides[k];
      rem %= new_strides[k];
      old_index += d * strides[order[k]];
    }
    idx[r] = old_index;
  }
  return idx;
}

}  // namespace detail

inline StateVector permute_modes(const StateVector& s, const std::vector<int>& order) {
  const auto idx = detail::permutation_indices(s.reg, order);
  Vector amp(s.amp.size());
  for (long r = 0; r < amp.size(); ++r) amp(r) = s.amp(idx[r]);
  return {s.reg.subset(order), std::move(amp)};
}

// Apply a single-mode operator M (dim_out x dim_in) to one mode; the mode's
// dimension becomes dim_out. M need not be unitary.
inline StateVector apply_mode_op(const StateVector& s, int mode, const Matrix& m) {
  if (m.cols() != s.reg.dim(mode)) throw std::invalid_argument("apply_mode_op: dim mismatch");
  std::vector<int> order;
  for (int i = 0; i < s.reg.num_modes(); ++i)
    if (i != mode) order.push_back(i);
  order.push_back(mode);
  StateVector p = permute_modes(s, order);
  const long rest = p.amp.size() / m.cols();
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      block(p.amp.data(), rest, m.cols());
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out =
      block * m.transpose();
  std::vector<Mode> modes;
  for (int i = 0; i < p.reg.num_modes() - 1; ++i)
    modes.push_back({p.reg.label(i), p.reg.dim(i)});
  modes.push_back({p.reg.label(p.reg.num_modes() - 1), static_cast<int>(m.rows())});
  StateVector q{FockRegister(std::move(modes)),
                Eigen::Map<Vector>(out.data(), out.size())};
  // restore original mode order
  std::vector<int> inv(q.reg.num_modes());
  int pos = 0;
  for (int i = 0; i < q.reg.num_modes(); ++i) {
    if (i == mode) {
      inv[i] = q.reg.num_modes() - 1;
    } else {
      inv[i] = pos++;
    }
  }
  return permute_modes(q, inv);
}

// Apply a two-mode operator (joint dim di*dj, square) to modes (i, j).
inline StateVector apply_pair_op(const StateVector& s, int mode_i, int mode_j,
                                 const Matrix& u) {
  const int di = s.reg.dim(mode_i), dj = s.reg.dim(mode_j);
  if (u.rows() != static_cast<long>(di) * dj || u.cols() != u.rows())
    throw std::invalid_argument("apply_pair_op: dim mismatch");
  std::vector<int> order;
  for (int i = 0; i < s.reg.num_modes(); ++i)
    if (i != mode_i && i != mode_j) order.push_back(i);
  order.push_back(mode_i);
  order.push_back(mode_j);
  StateVector p = permute_modes(s, order);
  const long pair = static_cast<long>(di) * dj;
  const long rest = p.amp.size() / pair;
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      block(p.amp.data(), rest, pair);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out =
      block * u.transpose();
  StateVector q{p.reg, Eigen::Map<Vector>(out.data(), out.size())};
  // restore original order
  std::vector<int> inv(q.reg.num_modes());
  int pos = 0;
  for (int i = 0; i < q.reg.num_modes(); ++i) {
    if (i == mode_i) inv[i] = q.reg.num_modes() - 2;
    else if (i == mode_j) inv[i] = q.reg.num_modes() - 1;
    else inv[i] = pos++;
  }
  return permute_modes(q, inv);
}

inline StateVector apply_beamsplitter(const StateVector& s, const std::string& mode_i,
                                      const std::string& mode_j, double T) {
  const int i = s.reg.index_of(mode_i), j = s.reg.index_of(mode_j);
  return apply_pair_op(s, i, j, beamsplitter_pair(T, s.reg.dim(i), s.reg.dim(j)));
}

// Full-register beam splitter unitary (identity on other modes). Dense; for
// small registers and unitarity checks only.
inline Matrix beamsplitter_unitary(double T, const std::string& mode_i,
                                   const std::string& mode_j, const FockRegister& reg) {
  const long n = reg.total_dim();
  const Matrix u = beamsplitter_pair(T, reg.dim(reg.index_of(mode_i)),
                                     reg.dim(reg.index_of(mode_j)));
  Matrix full(n, n);
  StateVector basis{reg, Vector::Zero(n)};
  for (long c = 0; c < n; ++c) {
    basis.amp.setZero();
    basis.amp(c) = 1.0;
    full.col(c) = apply_pair_op(basis, reg.index_of(mode_i), reg.index_of(mode_j), u).amp;
  }
  return full;
}

// Reduced density operator of a pure state on the kept modes (in the order
// given), via an outer product over the complementary modes.
inline DensityOperator ptrace_pure(const StateVector& s, const std::vector<std::string>& keep) {
  std::vector<int> keep_idx;
  keep_idx.reserve(keep.size());
  for (const auto& l : keep) keep_idx.push_back(s.reg.index_of(l));
  std::vector<int> order = keep_idx;
  for (int i = 0; i < s.reg.num_modes(); ++i)
    if (std::find(keep_idx.begin(), keep_idx.end(), i) == keep_idx.end())
      order.push_back(i);
  StateVector p = permute_modes(s, order);
  long dk = 1;
  for (int i : keep_idx) dk *= s.reg.dim(i);
  const long dt = p.amp.size() / dk;
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(p.amp.data(), dk, dt);
  return {s.reg.subset(keep_idx), m * m.adjoint()};
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set empty");
  std::vector<int> keep_idx;
  for (const auto& l : keep) keep_idx.push_back(rho.reg.index_of(l));
  std::vector<int> order = keep_idx;
  for (int i = 0; i < rho.reg.num_modes(); ++i)
    if (std::find(keep_idx.begin(), keep_idx.end(), i) == keep_idx.end())
      order.push_back(i);
  const auto idx = detail::permutation_indices(rho.reg, order);
  long dk = 1;
  for (int i : keep_idx) dk *= rho.reg.dim(i);
  const long dt = rho.reg.total_dim() / dk;
  Matrix out = Matrix::Zero(dk, dk);
  for (long r = 0; r < dk; ++r)
    for (long c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (long t = 0; t < dt; ++t) acc += rho.mat(idx[r * dt + t], idx[c * dt + t]);
      out(r, c) = acc;
    }
  return {rho.reg.subset(keep_idx), std::move(out)};
}

// Single-mode operator applied to a density operator from both sides
// (M rho M^dag on the named mode). The mode's dimension becomes M.rows().
inline DensityOperator apply_mode_op(const DensityOperator& rho, const std::string& mode,
                                     const Matrix& m) {
  const int k = rho.reg.index_of(mode);
  std::vector<int> order;
  for (int i = 0; i < rho.reg.num_modes(); ++i)
    if (i != k) order.push_back(i);
  order.push_back(k);
  const auto idx = detail::permutation_indices(rho.reg, order);
  const long n = rho.reg.total_dim();
  Matrix perm(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) perm(r, c) = rho.mat(idx[r], idx[c]);
  const long din = m.cols(), dout = m.rows();
  const long rest = n / din;
  Matrix out(rest * dout, rest * dout);
  for (long br = 0; br < rest; ++br)
    for (long bc = 0; bc < rest; ++bc)
      out.block(br * dout, bc * dout, dout, dout) =
          m * perm.block(br * din, bc * din, din, din) * m.adjoint();
  std::vector<Mode> modes;
  for (size_t i = 0; i + 1 < order.size(); ++i)
    modes.push_back({rho.reg.label(order[i]), rho.reg.dim(order[i])});
  modes.push_back({rho.reg.label(k), static_cast<int>(dout)});
  DensityOperator q{FockRegister(std::move(modes)), std::move(out)};
  // restore original mode order
  std::vector<int> inv(q.reg.num_modes());
  int pos = 0;
  for (int i = 0; i < q.reg.num_modes(); ++i) {
    if (i == k) inv[i] = q.reg.num_modes() - 1;
    else inv[i] = pos++;
  }
  const auto back = detail::permutation_indices(q.reg, inv);
  Matrix fin(q.mat.rows(), q.mat.cols());
  for (long r = 0; r < fin.rows(); ++r)
    for (long c = 0; c < fin.cols(); ++c) fin(r, c) = q.mat(back[r], back[c]);
  return {q.reg.subset(inv), std::move(fin)};
}

// Two-mode unitary conjugation on a density operator.
inline DensityOperator apply_pair_op(const DensityOperator& rho, const std::string& mode_i,
                                     const std::string& mode_j, const Matrix& u) {
  const int ki = rho.reg.index_of(mode_i), kj = rho.reg.index_of(mode_j);
  std::vector<int> order;
  for (int i = 0; i < rho.reg.num_modes(); ++i)
    if (i != ki && i != kj) order.push_back(i);
  order.push_back(ki);
  order.push_back(kj);
  const auto idx = detail::permutation_indices(rho.reg, order);
  const long n = rho.reg.total_dim();
  Matrix perm(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) perm(r, c) = rho.mat(idx[r], idx[c]);
  const long pair = u.rows();
  const long rest = n / pair;
  for (long br = 0; br < rest; ++br)
    for (long bc = 0; bc < rest; ++bc)
      perm.block(br * pair, bc * pair, pair, pair) =
          u * perm.block(br * pair, bc * pair, pair, pair) * u.adjoint();
  // undo permutation
  Matrix fin(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) fin(idx[r], idx[c]) = perm(r, c);
  return {rho.reg, std::move(fin)};
}

struct PovmOutcome {
  DensityOperator state;  // E^{1/2} rho E^{1/2}, unnormalized
  double probability;
  bool degenerate = false;  // probability numerically zero
};

// element acts on the named modes (joint space, given order).
inline PovmOutcome apply_povm_element(const DensityOperator& rho,
                                      const std::vector<std::string>& modes,
                                      const Matrix& element) {
  const double herm = (element - element.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-9) throw std::invalid_argument("apply_povm_element: element not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(element);
  if (es.eigenvalues().minCoeff() < -1e-9 || es.eigenvalues().maxCoeff() > 1.0 + 1e-9)
    throw std::invalid_argument("apply_povm_element: element not a valid POVM effect");
  Matrix sqrt_e = es.eigenvectors() *
                  es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                  es.eigenvectors().adjoint();

  // embed: permute the named modes to the end, conjugate blockwise
  std::vector<int> target_idx;
  for (const auto& l : modes) target_idx.push_back(rho.reg.index_of(l));
  std::vector<int> order;
  for (int i = 0; i < rho.reg.num_modes(); ++i)
    if (std::find(target_idx.begin(), target_idx.end(), i) == target_idx.end())
      order.push_back(i);
  for (int i : target_idx) order.push_back(i);
  const auto idx = detail::permutation_indices(rho.reg, order);
  const long n = rho.reg.total_dim();
  const long pair = sqrt_e.rows();
  const long rest = n / pair;
  Matrix perm(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) perm(r, c) = rho.mat(idx[r], idx[c]);
  for (long br = 0; br < rest; ++br)
    for (long bc = 0; bc < rest; ++bc)
      perm.block(br * pair, bc * pair, pair, pair) =
          sqrt_e * perm.block(br * pair, bc * pair, pair, pair) * sqrt_e;
  Matrix fin(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) fin(idx[r], idx[c]) = perm(r, c);
  DensityOperator out{rho.reg, std::move(fin)};
  const double prob = out.trace_real();
  return {std::move(out), prob, prob < 1e-300};
}

struct ModeSplit {
  std::vector<std::string> side_a;
  std::vector<std::string> side_b;
};

// log2 of the trace norm of the partial transpose over side_b.
inline double log_negativity(const DensityOperator& rho, const ModeSplit& split) {
  if (std::abs(rho.trace_real() - 1.0) > 1e-8)
    throw std::invalid_argument("log_negativity: state not normalized");
  std::vector<int> a_idx, b_idx;
  for (const auto& l : split.side_a) a_idx.push_back(rho.reg.index_of(l));
  for (const auto& l : split.side_b) b_idx.push_back(rho.reg.index_of(l));
  if (a_idx.size() + b_idx.size() != static_cast<size_t>(rho.reg.num_modes()))
    throw std::invalid_argument("log_negativity: split is not a partition");
  std::vector<int> order = a_idx;
  order.insert(order.end(), b_idx.begin(), b_idx.end());
  const auto idx = detail::permutation_indices(rho.reg, order);
  long da = 1, db = 1;
  for (int i : a_idx) da *= rho.reg.dim(i);
  for (int i : b_idx) db *= rho.reg.dim(i);
  const long n = da * db;
  Matrix pt(n, n);
  for (long ra = 0; ra < da; ++ra)
    for (long rb = 0; rb < db; ++rb)
      for (long ca = 0; ca < da; ++ca)
        for (long cb = 0; cb < db; ++cb)
          pt(ra * db + rb, ca * db + cb) =
              rho.mat(idx[ra * db + cb], idx[ca * db + rb]);
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt);
  const double norm1 = es.eigenvalues().cwiseAbs().sum();
  const double en = std::log2(norm1);
  return (en > -1e-9 && en < 0.0) ? 0.0 : en;
}

// <P|n> = pi^{-1/4} e^{-p^2/2} (-i)^n H_n(p) / sqrt(2^n n!), the quadrature
// convention used throughout; <P|alpha> = pi^{-1/4} e^{-p^2/2} e^{-i sqrt(2)
// alpha p} for real alpha, so the outcome density of any real-amplitude
// coherent state is the vacuum Gaussian.
inline Eigen::RowVectorXcd homodyne_kernel(double p, int dim) {
  Eigen::RowVectorXcd k(dim);
  const double prefac = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * p * p);
  // normalized Hermite functions psi_n(p) via stable recurrence
  double psi_prev = 0.0;
  double psi = 1.0;  // H_0 / sqrt(2^0 0!) = 1
  const Complex iu(0.0, 1.0);
  Complex phase = 1.0;
  for (int n = 0; n < dim; ++n) {
    k(n) = prefac * phase * psi;
    const double next =
        std::sqrt(2.0 / (n + 1.0)) * p * psi - std::sqrt(n / (n + 1.0)) * psi_prev;
    psi_prev = psi;
    psi = next;
    phase *= -iu;
  }
  return k;
}

inline double mean_photon(const StateVector& s, const std::string& mode) {
  const int k = s.reg.index_of(mode);
  StateVector t = apply_mode_op(s, k, number_op(s.reg.dim(k)));
  return s.amp.dot(t.amp).real();
}

inline double mean_photon(const DensityOperator& rho, const std::string& mode) {
  DensityOperator r = partial_trace(rho, {mode});
  return (number_op(r.reg.dim(0)) * r.mat).trace().real();
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-10) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  return es.eigenvalues().minCoeff();
}

}  // namespace hybridlink
