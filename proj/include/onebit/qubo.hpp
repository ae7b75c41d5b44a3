#pragma once

// Spin <-> binary maps, QUBO construction from the SNR Gram matrices, and
// the sample-set container every sampler backend returns.

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "onebit/model.hpp"

namespace onebit {

using BinaryVector = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

BinaryVector spin_to_binary(const SpinVector& s);
SpinVector binary_to_spin(const BinaryVector& b);

/// "0110" rendering, element 0 first. Parsing rejects anything but 0/1.
std::string bits_to_string(const BinaryVector& b);
BinaryVector bits_from_string(const std::string& s);

/// Lexicographic order on binary vectors, element 0 most significant.
bool lex_less(const BinaryVector& a, const BinaryVector& b);

enum class Sense { minimize };

/// Minimize b^T coeffs b over b in {0,1}^n.
///
/// When built from a spin-domain Gram q, the spin objective is recovered as
/// f^T q f = offset - scale * energy(b) with f = 2b - 1.
struct QuboInstance {
  Eigen::MatrixXd coeffs;
  double scale = 1.0;   // max-norm divisor
  double offset = 0.0;  // 1^T q 1, dropped by the binary rewrite
  Sense sense = Sense::minimize;

  Eigen::Index size() const { return coeffs.rows(); }
  double energy(const BinaryVector& b) const;
  double spin_objective(double energy) const { return offset - scale * energy; }

  /// Throws unless coeffs is square and symmetric to 1e-12.
  void validate() const;
};

/// Q0 = 4q - 4 diag(q 1), calibrated to Q0 / ||Q0||_max and negated for
/// minimization. An all-zero Q0 keeps scale = 1.
QuboInstance build_qubo_from_gram(const Eigen::MatrixXd& q_real);

struct Sample {
  BinaryVector bits;
  double energy = 0.0;
  long occurrences = 1;
};

struct SampleSet {
  std::vector<Sample> samples;  // ascending energy, then lexicographic bits
  long total_reads = 0;

  bool empty() const { return samples.empty(); }
  const Sample& best() const;

  /// Merges duplicate states, recomputes energies from `inst`, sorts.
  static SampleSet from_samples(const QuboInstance& inst, std::vector<Sample> raw);

  /// Throws with a description of the first broken invariant.
  void check_invariants(const QuboInstance& inst, double energy_tol = 1e-9) const;
};

struct SamplerConfig {
  int num_reads = 1000;
  std::uint64_t seed = 0;
  int sa_sweeps = 100;
  std::pair<double, double> sa_beta_range{0.1, 10.0};

  void validate() const;
};

/// Backend interface shared by the exact enumerator, the annealing
/// emulator, and the external bridge. Implementations must be callable
/// concurrently or serialize internally.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual SampleSet sample(const QuboInstance& inst, const SamplerConfig& cfg) const = 0;
  virtual std::string name() const = 0;
};

inline constexpr int kExactMaxVariables = 24;

/// Full enumeration; returns the `keep` lowest states (all states when
/// keep == 0), each with occurrences = 1.
SampleSet solve_exact(const QuboInstance& inst, std::size_t keep = 32);

/// num_reads independent single-spin-flip Metropolis runs with a geometric
/// inverse-temperature schedule. Read r is seeded from cfg.seed + r.
SampleSet solve_sa(const QuboInstance& inst, const SamplerConfig& cfg);

class ExactSampler final : public Sampler {
 public:
  explicit ExactSampler(std::size_t keep = 32) : keep_(keep) {}
  SampleSet sample(const QuboInstance& inst, const SamplerConfig&) const override {
    return solve_exact(inst, keep_);
  }
  std::string name() const override { return "exact"; }

 private:
  std::size_t keep_;
};

class AnnealingSampler final : public Sampler {
 public:
  SampleSet sample(const QuboInstance& inst, const SamplerConfig& cfg) const override {
    return solve_sa(inst, cfg);
  }
  std::string name() const override { return "sa"; }
};

}  // namespace onebit
