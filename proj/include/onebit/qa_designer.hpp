#pragma once

// Alternating optimization where every half-step is a QUBO handed to a
// pluggable sampler, repeated from L initial post-coding vectors.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "onebit/designers.hpp"
#include "onebit/qubo.hpp"

namespace onebit {

struct QaControl {
  IterControl ctrl;
  int num_restarts_l = 10;
  const Sampler* sampler = nullptr;
  SamplerConfig sampler_cfg;
  std::uint64_t restart_seed = 0;
  /// When non-empty, used as g^(0) for each restart instead of random draws;
  /// its length must equal num_restarts_l.
  std::vector<SpinVector> initial_g;

  void validate() const;
};

struct RestartOutcome {
  SpinVector g0;
  std::optional<DesignResult> result;
  std::string error;  // set when the restart failed
};

struct QaDesignResult : DesignResult {
  std::vector<RestartOutcome> restarts;
  int failed_restarts = 0;
  int best_restart = -1;
};

/// Observer for every sampler invocation (restart, iteration, 'f' or 'g',
/// instance, samples). Used by the anneal-distribution report.
using SampleObserver = std::function<void(int, int, char, const QuboInstance&, const SampleSet&)>;

/// The lowest-energy sample; ties go to the lexicographically smallest bits.
const Sample& pick_best(const SampleSet& ss);

QaDesignResult qa_design(const SystemParams& params, const ChannelMatrix& h, const QaControl& qc,
                         const SampleObserver& observer = {});

/// All 2^(n-1) spin vectors with element 0 = +1, in enumeration order.
std::vector<SpinVector> sign_distinct_spins(Eigen::Index n);

}  // namespace onebit
