#pragma once

// MIMO link model with 1-bit (+/-1) analogue pre/post-coding vectors.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>

#include "onebit/error.hpp"

namespace onebit {

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

struct SystemParams {
  int n_t = 1;
  int n_r = 1;
  double power_p = 1.0;    // linear scale
  double noise_var = 1.0;  // sigma^2

  void validate() const;
  /// P * (.) / (n_t n_r sigma^2)
  double snr_scale() const { return power_p / (double(n_t) * double(n_r) * noise_var); }
};

double db_to_linear(double db);
double linear_to_db(double lin);

/// Vector over {-1,+1}. Stored as int8 so sign flips and comparisons are exact.
class SpinVector {
 public:
  using Storage = Eigen::Matrix<std::int8_t, Eigen::Dynamic, 1>;

  SpinVector() = default;
  explicit SpinVector(Storage spins);
  SpinVector(std::initializer_list<int> spins);

  static SpinVector ones(Eigen::Index n);

  Eigen::Index size() const { return spins_.size(); }
  int operator[](Eigen::Index i) const { return spins_[i]; }
  const Storage& values() const { return spins_; }

  template <typename T>
  Eigen::Matrix<T, Eigen::Dynamic, 1> cast() const {
    return spins_.template cast<T>();
  }

  SpinVector operator-() const { return SpinVector(Storage(-spins_)); }
  bool operator==(const SpinVector& o) const {
    return spins_.size() == o.spins_.size() && spins_ == o.spins_;
  }

  /// "+-+..." rendering.
  std::string str() const;

 private:
  Storage spins_;
};

/// Elementwise sign of the real part, with sign(0) = +1.
template <typename Derived>
SpinVector sign_real(const Eigen::MatrixBase<Derived>& v) {
  SpinVector::Storage s(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) s[i] = std::real(v[i]) < 0 ? -1 : 1;
  return SpinVector(std::move(s));
}

class ChannelMatrix {
 public:
  ChannelMatrix() = default;
  explicit ChannelMatrix(Eigen::MatrixXcd entries,
                         std::optional<std::uint64_t> seed = std::nullopt);

  const Eigen::MatrixXcd& entries() const { return entries_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }
  int n_r() const { return int(entries_.rows()); }
  int n_t() const { return int(entries_.cols()); }

  /// Throws DimensionError unless the shape matches `p`.
  void check_shape(const SystemParams& p) const;

 private:
  Eigen::MatrixXcd entries_;
  std::optional<std::uint64_t> seed_;
};

struct CodingPair {
  SpinVector g;  // length n_r
  SpinVector f;  // length n_t
  double snr = 0.0;
};

namespace detail {

template <typename Derived>
void check_pair(const Eigen::MatrixBase<Derived>& h, const SpinVector& g, const SpinVector& f) {
  if (g.size() != h.rows()) throw DimensionError("g", long(h.rows()), long(g.size()));
  if (f.size() != h.cols()) throw DimensionError("f", long(h.cols()), long(f.size()));
}

// g^T (H f) with a fixed summation order. Exhaustive search and
// evaluate_snr both go through here so their values compare exactly.
template <typename Complex, typename VecDerived>
Complex spin_dot(const SpinVector& g, const Eigen::MatrixBase<VecDerived>& hf) {
  Complex s(0);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (g[i] > 0) s += hf[i];
    else s -= hf[i];
  }
  return s;
}

template <typename Derived>
auto apply_spins(const Eigen::MatrixBase<Derived>& h, const SpinVector& f) {
  using Complex = typename Derived::Scalar;
  return (h * f.cast<typename Derived::RealScalar>().template cast<Complex>()).eval();
}

}  // namespace detail

/// |g^T H f|^2. Plain transpose on g, which equals g^H since g is real.
template <typename Derived>
typename Derived::RealScalar coupling_power(const Eigen::MatrixBase<Derived>& h,
                                            const SpinVector& g, const SpinVector& f) {
  using Complex = typename Derived::Scalar;
  detail::check_pair(h, g, f);
  const auto hf = detail::apply_spins(h, f);
  return std::norm(detail::spin_dot<Complex>(g, hf));
}

/// Received SNR P |g^T H f|^2 / (n_t n_r sigma^2).
template <typename Derived>
typename Derived::RealScalar evaluate_snr(const SystemParams& params,
                                          const Eigen::MatrixBase<Derived>& h,
                                          const SpinVector& g, const SpinVector& f) {
  if (h.rows() != params.n_r) throw DimensionError("h rows", params.n_r, long(h.rows()));
  if (h.cols() != params.n_t) throw DimensionError("h cols", params.n_t, long(h.cols()));
  return params.snr_scale() * coupling_power(h, g, f);
}

inline double evaluate_snr(const SystemParams& params, const ChannelMatrix& h,
                           const SpinVector& g, const SpinVector& f) {
  return evaluate_snr(params, h.entries(), g, f);
}

/// Same formula with complex relaxed vectors and plain (unconjugated)
/// transpose on g. Only used for the stopping rule of the relaxed
/// alternating design.
template <typename Derived, typename GDerived, typename FDerived>
typename Derived::RealScalar evaluate_snr_relaxed(const SystemParams& params,
                                                  const Eigen::MatrixBase<Derived>& h,
                                                  const Eigen::MatrixBase<GDerived>& g,
                                                  const Eigen::MatrixBase<FDerived>& f) {
  if (g.size() != h.rows()) throw DimensionError("g", long(h.rows()), long(g.size()));
  if (f.size() != h.cols()) throw DimensionError("f", long(h.cols()), long(f.size()));
  return params.snr_scale() * std::norm((g.transpose() * (h * f)).value());
}

/// Re(H^H g g^T H), n_t x n_t. For real g this is Re(a a^H) with a = H^H g,
/// assembled as Re(a)Re(a)^T + Im(a)Im(a)^T so it is exactly symmetric.
template <typename Derived>
RMatrix<typename Derived::RealScalar> objective_gram_f(const Eigen::MatrixBase<Derived>& h,
                                                       const SpinVector& g) {
  using Real = typename Derived::RealScalar;
  if (g.size() != h.rows()) throw DimensionError("g", long(h.rows()), long(g.size()));
  const CVector<Real> a = h.adjoint() * g.cast<Real>().template cast<std::complex<Real>>();
  const RVector<Real> re = a.real();
  const RVector<Real> im = a.imag();
  return re * re.transpose() + im * im.transpose();
}

/// Re(H f f^T H^H), n_r x n_r.
template <typename Derived>
RMatrix<typename Derived::RealScalar> objective_gram_g(const Eigen::MatrixBase<Derived>& h,
                                                       const SpinVector& f) {
  using Real = typename Derived::RealScalar;
  if (f.size() != h.cols()) throw DimensionError("f", long(h.cols()), long(f.size()));
  const CVector<Real> b = detail::apply_spins(h, f);
  const RVector<Real> re = b.real();
  const RVector<Real> im = b.imag();
  return re * re.transpose() + im * im.transpose();
}

inline Eigen::MatrixXd objective_gram_f(const ChannelMatrix& h, const SpinVector& g) {
  return objective_gram_f(h.entries(), g);
}
inline Eigen::MatrixXd objective_gram_g(const ChannelMatrix& h, const SpinVector& f) {
  return objective_gram_g(h.entries(), f);
}

/// i.i.d. CN(0,1) entries; a pure function of (shape, seed).
ChannelMatrix generate_channel(const SystemParams& params, std::uint64_t seed);

CodingPair make_coding_pair(const SystemParams& params, const ChannelMatrix& h, SpinVector g,
                            SpinVector f);

/// Spin vector with element 0 forced to +1 and the rest uniform; one of the
/// two sign-equivalent representatives.
SpinVector random_spin_vector(Eigen::Index n, std::uint64_t seed, bool first_positive = true);

/// Deterministic unit-norm complex vector with CN(0,1) direction.
Eigen::VectorXcd random_unit_vector(Eigen::Index n, std::uint64_t seed);

}  // namespace onebit
