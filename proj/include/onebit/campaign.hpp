#pragma once

// Monte-Carlo comparison of all design methods over seeded channels.

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "onebit/bridge.hpp"
#include "onebit/designers.hpp"
#include "onebit/qa_designer.hpp"

namespace onebit {

enum class Method { es, svd, rq, rqm, qa_exact, qa_sa, qa_bridge };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);
/// Comma-separated list, e.g. "es,svd,qa-sa".
std::vector<Method> parse_methods(std::string_view list);

struct ExperimentConfig {
  SystemParams params;
  int n_trials = 1;
  std::uint64_t master_seed = 0;
  int first_trial = 0;  // trial i uses seed master_seed + i
  std::vector<Method> methods;
  IterControl ctrl;
  int restarts = 10;
  SamplerConfig sampler_cfg;
  std::optional<BridgeEndpoint> bridge;
  bool randomize_classical_init = false;
  bool csv_wall_clock = false;  // otherwise wall_us is written as 0 so reruns are byte-identical

  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  Method method = Method::es;
  std::optional<double> snr;  // empty when the method failed
  int iterations = 0;
  bool converged = false;
  long long wall_us = 0;
  std::string error;
};

struct MethodSummary {
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
  int failures = 0;
  long long wall_us = 0;
};

struct CampaignReport {
  ExperimentConfig config;
  std::vector<TrialRecord> rows;     // trial-major, methods in config order
  std::vector<double> eigen_bound;   // P lambda_1 / sigma^2 per trial (NaN if unavailable)
  std::map<Method, MethodSummary> summary;
  double eigen_bound_mean = 0.0;
  std::vector<std::string> violations;  // bound checks that failed

  std::optional<double> snr(int trial, Method m) const;
};

CampaignReport run_campaign(const ExperimentConfig& cfg);

/// Columns: trial,seed,method,snr,iterations,converged,wall_us. Each trial
/// also gets an "eigen-bound" row.
void write_csv(const CampaignReport& report, std::ostream& os);

nlohmann::ordered_json summary_json(const CampaignReport& report);

}  // namespace onebit
