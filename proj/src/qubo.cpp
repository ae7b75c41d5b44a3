#include "onebit/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace onebit {

BinaryVector spin_to_binary(const SpinVector& s) {
  BinaryVector b(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) b[i] = s[i] > 0 ? 1 : 0;
  return b;
}

SpinVector binary_to_spin(const BinaryVector& b) {
  SpinVector::Storage s(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    if (b[i] > 1) throw InvalidArgument("binary vector element " + std::to_string(i) + " is not 0/1");
    s[i] = b[i] ? 1 : -1;
  }
  return SpinVector(std::move(s));
}

std::string bits_to_string(const BinaryVector& b) {
  std::string s(std::size_t(b.size()), '0');
  for (Eigen::Index i = 0; i < b.size(); ++i) s[std::size_t(i)] = b[i] ? '1' : '0';
  return s;
}

BinaryVector bits_from_string(const std::string& s) {
  BinaryVector b(Eigen::Index(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw InvalidArgument("bit string has character '" + std::string(1, s[i]) + "'");
    b[Eigen::Index(i)] = s[i] == '1';
  }
  return b;
}

bool lex_less(const BinaryVector& a, const BinaryVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

double QuboInstance::energy(const BinaryVector& b) const {
  if (b.size() != size()) throw DimensionError("b", long(size()), long(b.size()));
  double e = 0.0;
  const Eigen::Index n = size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!b[i]) continue;
    e += coeffs(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (b[j]) e += 2.0 * coeffs(i, j);
  }
  return e;
}

void QuboInstance::validate() const {
  if (coeffs.rows() != coeffs.cols())
    throw DimensionError("qubo coeffs cols", long(coeffs.rows()), long(coeffs.cols()));
  if (!coeffs.allFinite()) throw InvalidArgument("qubo coeffs have non-finite entries");
  if ((coeffs - coeffs.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("qubo coeffs are not symmetric");
  if (!(scale > 0.0)) throw InvalidArgument("qubo scale must be > 0");
}

QuboInstance build_qubo_from_gram(const Eigen::MatrixXd& q_real) {
  if (q_real.rows() != q_real.cols())
    throw DimensionError("gram cols", long(q_real.rows()), long(q_real.cols()));
  if (q_real.size() == 0) throw InvalidArgument("empty gram matrix");
  const double mag = std::max(1.0, q_real.cwiseAbs().maxCoeff());
  if ((q_real - q_real.transpose()).cwiseAbs().maxCoeff() > 1e-9 * mag)
    throw InvalidArgument("gram matrix is not symmetric");
  const Eigen::MatrixXd q = 0.5 * (q_real + q_real.transpose());

  // (2b-1)^T q (2b-1) = b^T (4q - 4 diag(q 1)) b + 1^T q 1, using b_i^2 = b_i.
  Eigen::MatrixXd q0 = 4.0 * q;
  q0.diagonal() -= 4.0 * q.rowwise().sum();

  QuboInstance inst;
  inst.offset = q.sum();
  const double m = q0.cwiseAbs().maxCoeff();
  inst.scale = m > 0.0 ? m : 1.0;
  inst.coeffs = -q0 / inst.scale;
  return inst;
}

const Sample& SampleSet::best() const {
  if (samples.empty()) throw Error("sample set is empty");
  return samples.front();
}

SampleSet SampleSet::from_samples(const QuboInstance& inst, std::vector<Sample> raw) {
  std::map<std::string, long> counts;
  for (const auto& s : raw) {
    if (s.bits.size() != inst.size())
      throw DimensionError("sample bits", long(inst.size()), long(s.bits.size()));
    if (s.occurrences < 1) throw InvalidArgument("sample occurrence count must be >= 1");
    counts[bits_to_string(s.bits)] += s.occurrences;
  }
  SampleSet out;
  out.samples.reserve(counts.size());
  for (const auto& [key, occ] : counts) {
    Sample s;
    s.bits = bits_from_string(key);
    s.energy = inst.energy(s.bits);
    s.occurrences = occ;
    out.total_reads += occ;
    out.samples.push_back(std::move(s));
  }
  std::stable_sort(out.samples.begin(), out.samples.end(),
                   [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
  return out;
}

void SampleSet::check_invariants(const QuboInstance& inst, double energy_tol) const {
  long sum = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    sum += s.occurrences;
    const double e = inst.energy(s.bits);
    if (std::abs(e - s.energy) > energy_tol)
      throw Error("sample " + std::to_string(i) + " energy " + std::to_string(s.energy) +
                  " differs from recomputed " + std::to_string(e));
    if (i > 0) {
      const auto& p = samples[i - 1];
      if (s.energy < p.energy || (s.energy == p.energy && !lex_less(p.bits, s.bits)))
        throw Error("samples not sorted at index " + std::to_string(i));
    }
  }
  if (sum != total_reads)
    throw Error("occurrences sum to " + std::to_string(sum) + ", total_reads is " +
                std::to_string(total_reads));
}

void SamplerConfig::validate() const {
  if (num_reads < 1) throw InvalidArgument("num_reads must be >= 1");
  if (sa_sweeps < 1) throw InvalidArgument("sa_sweeps must be >= 1");
  if (!(sa_beta_range.first > 0.0 && sa_beta_range.second > sa_beta_range.first))
    throw InvalidArgument("beta range must be positive and increasing");
}

}  // namespace onebit
