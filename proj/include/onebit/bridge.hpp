#pragma once

// Client side of the external sampler bridge. The bridge is a subprocess
// reading one request document on stdin and writing one response document
// on stdout.

#include <mutex>
#include <string>

#include "onebit/exchange.hpp"
#include "onebit/qubo.hpp"

namespace onebit {

struct BridgeEndpoint {
  std::string command;  // run through /bin/sh
  double annealing_time_us = 1.0;
  double ferromagnetic_coupling = 3.0;
};

struct BridgeReply {
  SampleSet samples;
  TimingMap timing;  // stage names exactly as the bridge sent them
};

/// Energies reported by the bridge must match the instance's own
/// coefficients within 1e-6 relative; the returned set carries recomputed
/// energies.
BridgeReply bridge_client_call(const QuboInstance& inst, const SamplerConfig& cfg,
                               const BridgeEndpoint& endpoint);

inline SampleSet bridge_client_sample(const QuboInstance& inst, const SamplerConfig& cfg,
                                      const BridgeEndpoint& endpoint) {
  return bridge_client_call(inst, cfg, endpoint).samples;
}

/// Sampler facade over the bridge; one call in flight at a time.
class BridgeSampler final : public Sampler {
 public:
  explicit BridgeSampler(BridgeEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

  SampleSet sample(const QuboInstance& inst, const SamplerConfig& cfg) const override;
  std::string name() const override { return "bridge"; }

  TimingMap last_timing() const;

 private:
  BridgeEndpoint endpoint_;
  mutable std::mutex mu_;
  mutable TimingMap last_timing_;
};

}  // namespace onebit
