#pragma once

// Brute-force references used only by the tests. Nothing here shares code
// paths with the routines under test beyond evaluate_snr itself.

#include <Eigen/Eigenvalues>

#include <cstdint>
#include <vector>

#include "onebit/onebit.hpp"

namespace oracle {

using namespace onebit;

/// Every spin vector of length n, no symmetry reduction.
inline std::vector<SpinVector> all_spins(int n) {
  std::vector<SpinVector> out;
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
    SpinVector::Storage s(n);
    for (int k = 0; k < n; ++k) s[k] = ((idx >> k) & 1u) ? -1 : 1;
    out.emplace_back(std::move(s));
  }
  return out;
}

inline std::vector<BinaryVector> all_binary(int n) {
  std::vector<BinaryVector> out;
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
    BinaryVector b(n);
    for (int k = 0; k < n; ++k) b[k] = (idx >> k) & 1u;
    out.push_back(b);
  }
  return out;
}

/// Naive 2^(n_t + n_r) search with the textbook |g^T H f|^2, no pinned signs.
inline double naive_max_snr(const SystemParams& p, const ChannelMatrix& h) {
  double best = 0.0;
  const auto gs = all_spins(p.n_r);
  const auto fs = all_spins(p.n_t);
  for (const auto& g : gs)
    for (const auto& f : fs) {
      const std::complex<double> s =
          (g.cast<double>().cast<std::complex<double>>().transpose() * h.entries() *
           f.cast<double>().cast<std::complex<double>>())
              .value();
      best = std::max(best, p.snr_scale() * std::norm(s));
    }
  return best;
}

/// Largest eigenvalue of a Hermitian matrix by a dense eigensolver.
inline double max_eigenvalue(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

/// Direct b^T M b with the full double sum.
inline double qubo_energy(const Eigen::MatrixXd& m, const BinaryVector& b) {
  const Eigen::VectorXd x = b.cast<double>();
  return x.dot(m * x);
}

/// Indices (into all_spins order) attaining max f^T q f within rel tol.
inline std::vector<std::size_t> spin_argmax(const Eigen::MatrixXd& q, double rel = 1e-12) {
  const auto fs = all_spins(int(q.rows()));
  std::vector<double> v;
  for (const auto& f : fs) {
    const Eigen::VectorXd x = f.cast<double>();
    v.push_back(x.dot(q * x));
  }
  const double mx = *std::max_element(v.begin(), v.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] >= mx - rel * std::max(1.0, std::abs(mx))) out.push_back(i);
  return out;
}

/// Indices (into all_binary order) attaining min energy within abs tol.
inline std::vector<std::size_t> binary_argmin(const Eigen::MatrixXd& m, double tol = 1e-12) {
  const auto bs = all_binary(int(m.rows()));
  std::vector<double> v;
  for (const auto& b : bs) v.push_back(qubo_energy(m, b));
  const double mn = *std::min_element(v.begin(), v.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] <= mn + tol) out.push_back(i);
  return out;
}

/// Random complex Gaussian matrix, independent of generate_channel.
inline Eigen::MatrixXcd gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = {n(eng), n(eng)};
  return m;
}

inline SpinVector random_spins(int n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  SpinVector::Storage s(n);
  for (int i = 0; i < n; ++i) s[i] = (eng() & 1u) ? 1 : -1;
  return SpinVector(std::move(s));
}

}  // namespace oracle
