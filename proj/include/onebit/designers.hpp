#pragma once

// Classical 1-bit pre/post-coding designs: exhaustive search, sign
// quantization of the leading singular pair, and the two Rayleigh-quotient
// alternating heuristics.

#include <optional>
#include <vector>

#include "onebit/linalg.hpp"
#include "onebit/model.hpp"

namespace onebit {

struct IterControl {
  double rel_tol_delta = 0.01;  // delta
  int max_iters_k = 10;         // K

  void validate() const;
};

struct DesignResult {
  CodingPair pair;
  int iterations_used = 0;
  bool converged_by_tolerance = false;
  std::vector<double> trace;  // one SNR value per iteration
  Eigen::VectorXcd relaxed_g, relaxed_f;  // last complex iterates (rqm only)
};

/// |new - old| / |old|, +inf when old == 0.
double relative_change(double rho_new, double rho_old);

inline constexpr int kExhaustiveMaxAntennas = 30;

/// Global maximizer over all spin pairs. The first element of f and g is
/// pinned to +1 (sign symmetry), so 2^(n_t + n_r - 2) pairs are scored.
/// Enumeration order: f outer, g inner; bit k-1 of the index set means
/// element k is -1. Ties keep the lowest index.
DesignResult exhaustive_search(const SystemParams& params, const ChannelMatrix& h);

/// f = sign(Re v1), g = sign(Re u1). Real parts within opt.tol of zero count as zero.
DesignResult svd_sign_design(const SystemParams& params, const ChannelMatrix& h,
                             const PowerIterationOptions& opt = {});

/// Alternating Rayleigh-quotient design, quantizing after every half-step.
/// `f0` only enters the initial SNR used by the first stopping test; it
/// defaults to all +1. Returns the last iterate.
DesignResult rq_design(const SystemParams& params, const ChannelMatrix& h, const IterControl& ctrl,
                       const SpinVector& g0, const std::optional<SpinVector>& f0 = std::nullopt);

/// Relaxed variant: iterates on unit complex vectors and quantizes once at
/// exit. The trace holds the relaxed SNR used by the stopping test. `f0`
/// defaults to normalize(H^H g0).
DesignResult rqm_design(const SystemParams& params, const ChannelMatrix& h,
                        const IterControl& ctrl, const Eigen::VectorXcd& g0,
                        const std::optional<Eigen::VectorXcd>& f0 = std::nullopt);

}  // namespace onebit
