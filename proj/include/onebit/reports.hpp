#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "onebit/exchange.hpp"
#include "onebit/qubo.hpp"

namespace onebit {

// Stage names used by annealer timing breakdowns.
inline constexpr const char* kProgrammingTime = "Programming time";
inline constexpr const char* kAnnealTime = "Anneal time";
inline constexpr const char* kReadoutTime = "Readout time";
inline constexpr const char* kReadoutDelay = "Readout delay";
inline constexpr const char* kPostProcessing = "Post processing";

struct AnnealRow {
  int rank = 0;  // 1-based, descending objective
  BinaryVector bits;
  double energy = 0.0;
  double objective = 0.0;  // spin-domain f^T q f
  long occurrences = 0;
  double probability = 0.0;
  int symmetry_class = 0;  // b and its complement share a class
  double class_probability = 0.0;
  bool attains_es = false;
};

struct AnnealReport {
  std::vector<AnnealRow> rows;
  double top_class_probability = 0.0;  // merged probability of the class holding rank 1
};

/// Ranks the distinct states of `ss` by descending spin objective and
/// merges each state with its complement (the -f twin).
AnnealReport report_anneal_distribution(const QuboInstance& inst, const SampleSet& ss,
                                        double es_energy, double tol = 1e-9);

/// `snr_scale` converts the spin objective to an SNR column; pass 0 to omit.
void write_anneal_csv(const AnnealReport& report, std::ostream& os, double snr_scale = 0.0);

struct TimingReport {
  TimingMap stages;
  double total_us = 0.0;
  std::string table;
};

TimingReport report_timing(const TimingMap& stages);

}  // namespace onebit
