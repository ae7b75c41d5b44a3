#pragma once

// Leading singular triplet by power iteration, and the closed-form top
// eigenvector of a rank-1 Hermitian matrix.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

#include "onebit/error.hpp"
#include "onebit/model.hpp"
#include "onebit/rng.hpp"

namespace onebit {

template <typename Scalar>
struct SingularTriplet {
  Scalar sigma1_sq = 0;  // lambda_1
  CVector<Scalar> u1;    // left, length n_r
  CVector<Scalar> v1;    // right, length n_t
  int iterations = 0;
};

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iter = 0;  // 0: 10 * max(n_t, n_r) * ceil(log10(1/tol))
  std::uint64_t start_seed = 0x5eed;
  // Each iteration applies G^(2^squarings). Same fixed point as plain power
  // iteration on G, with the contraction rate raised to that power.
  int squarings = 3;
};

inline int default_max_iter(Eigen::Index n_t, Eigen::Index n_r, double tol) {
  return int(10 * std::max(n_t, n_r) * std::max(1.0, std::ceil(std::log10(1.0 / tol))));
}

/// Rotates `v` in place so its largest-magnitude entry (lowest index on
/// ties) is real and positive.
template <typename Derived>
void apply_phase_gauge(Eigen::MatrixBase<Derived>& v) {
  using std::abs;
  if (v.size() == 0) return;
  Eigen::Index k = 0;
  auto best = abs(v[0]);
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const auto m = abs(v[i]);
    if (m > best) {
      best = m;
      k = i;
    }
  }
  if (best == 0) return;
  const auto phase = std::conj(v[k]) / best;
  v *= phase;
  v[k] = best;
}

template <typename Derived>
auto phase_gauged(const Eigen::MatrixBase<Derived>& v) {
  typename Derived::PlainObject out = v;
  apply_phase_gauge(out);
  return out;
}

/// Top eigenvector of a a^H, i.e. a / ||a||. No phase gauge is applied.
template <typename Derived>
CVector<typename Derived::RealScalar> rank1_top_eigvec(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  const Real n = a.norm();
  if (!(n > 0)) throw InvalidArgument("rank1_top_eigvec: zero vector");
  return (a / n).template cast<std::complex<Real>>();
}

/// Leading singular triplet of H via power iteration on the smaller of
/// H^H H and H H^H. The returned pair satisfies H v1 = sqrt(lambda_1) u1 to
/// rounding, and v1 is phase-gauged.
template <typename Derived>
SingularTriplet<typename Derived::RealScalar> leading_triplet(
    const Eigen::MatrixBase<Derived>& h, const PowerIterationOptions& opt = {}) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  using Mat = CMatrix<Real>;
  using Vec = CVector<Real>;

  if (!(opt.tol > 0)) throw InvalidArgument("leading_triplet: tol must be > 0");
  const Mat hm = h;
  if (hm.size() == 0 || hm.cwiseAbs().maxCoeff() == Real(0))
    throw InvalidArgument("leading_triplet: zero matrix");
  if (opt.max_iter < 0) throw InvalidArgument("leading_triplet: max_iter must be >= 1");
  const int max_iter =
      opt.max_iter > 0 ? opt.max_iter : default_max_iter(hm.cols(), hm.rows(), opt.tol);

  const bool right_side = hm.cols() <= hm.rows();
  const Mat gram = right_side ? Mat(hm.adjoint() * hm) : Mat(hm * hm.adjoint());
  const Eigen::Index n = gram.rows();

  Mat step = gram;
  for (int s = 0; s < opt.squarings; ++s) {
    step = (step * step).eval();
    step /= step.cwiseAbs().maxCoeff();
  }

  Engine eng = make_engine(opt.start_seed);
  Vec x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [re, im] = normal_pair(eng);
    x[i] = Complex(Real(re), Real(im));
  }
  x.normalize();

  Real residual = std::numeric_limits<Real>::infinity();
  int it = 0;
  bool converged = false;
  while (it < max_iter) {
    ++it;
    Vec y = step * x;
    const Real ny = y.norm();
    if (!(ny > 0)) {
      // Start vector orthogonal to the dominant subspace; perturb.
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto [re, im] = normal_pair(eng);
        y[i] = Complex(Real(re), Real(im));
      }
      x = y.normalized();
      continue;
    }
    x = y / ny;
    const Vec gx = gram * x;
    const Real lambda = std::real(x.dot(gx));
    residual = (gx - lambda * x).norm();
    if (residual <= Real(opt.tol) * lambda) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("leading_triplet: no convergence within " + std::to_string(max_iter) +
                               " iterations",
                           double(residual));

  SingularTriplet<Real> out;
  out.iterations = it;
  if (right_side) {
    out.v1 = x;
  } else {
    out.v1 = (hm.adjoint() * x).normalized();
  }
  apply_phase_gauge(out.v1);
  const Vec hv = hm * out.v1;
  const Real s1 = hv.norm();
  out.sigma1_sq = s1 * s1;
  out.u1 = hv / s1;
  return out;
}

template <typename Derived>
SingularTriplet<typename Derived::RealScalar> leading_triplet(const Eigen::MatrixBase<Derived>& h,
                                                              double tol, int max_iter) {
  if (max_iter < 1) throw InvalidArgument("leading_triplet: max_iter must be >= 1");
  PowerIterationOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return leading_triplet(h, opt);
}

inline SingularTriplet<double> leading_triplet(const ChannelMatrix& h,
                                               const PowerIterationOptions& opt = {}) {
  return leading_triplet(h.entries(), opt);
}

}  // namespace onebit
