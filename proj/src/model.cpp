#include "onebit/model.hpp"

#include <cmath>

#include "onebit/rng.hpp"

namespace onebit {

void SystemParams::validate() const {
  if (n_t < 1) throw InvalidArgument("n_t must be >= 1");
  if (n_r < 1) throw InvalidArgument("n_r must be >= 1");
  if (!(power_p > 0.0) || !std::isfinite(power_p)) throw InvalidArgument("power_p must be > 0");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var))
    throw InvalidArgument("noise_var must be > 0");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

SpinVector::SpinVector(Storage spins) : spins_(std::move(spins)) {
  for (Eigen::Index i = 0; i < spins_.size(); ++i)
    if (spins_[i] != 1 && spins_[i] != -1)
      throw InvalidArgument("spin vector element " + std::to_string(i) + " is not +/-1");
}

SpinVector::SpinVector(std::initializer_list<int> spins) {
  Storage s(static_cast<Eigen::Index>(spins.size()));
  Eigen::Index i = 0;
  for (int v : spins) {
    if (v != 1 && v != -1)
      throw InvalidArgument("spin vector element " + std::to_string(i) + " is not +/-1");
    s[i++] = static_cast<std::int8_t>(v);
  }
  spins_ = std::move(s);
}

SpinVector SpinVector::ones(Eigen::Index n) { return SpinVector(Storage::Ones(n)); }

std::string SpinVector::str() const {
  std::string out;
  out.reserve(std::size_t(spins_.size()));
  for (Eigen::Index i = 0; i < spins_.size(); ++i) out.push_back(spins_[i] > 0 ? '+' : '-');
  return out;
}

ChannelMatrix::ChannelMatrix(Eigen::MatrixXcd entries, std::optional<std::uint64_t> seed)
    : entries_(std::move(entries)), seed_(seed) {
  if (entries_.size() == 0) throw InvalidArgument("channel matrix is empty");
  if (!entries_.allFinite()) throw InvalidArgument("channel matrix has non-finite entries");
}

void ChannelMatrix::check_shape(const SystemParams& p) const {
  if (n_r() != p.n_r) throw DimensionError("h rows", p.n_r, n_r());
  if (n_t() != p.n_t) throw DimensionError("h cols", p.n_t, n_t());
}

ChannelMatrix generate_channel(const SystemParams& params, std::uint64_t seed) {
  params.validate();
  Engine eng = make_engine(seed);
  const double s = std::sqrt(0.5);
  Eigen::MatrixXcd h(params.n_r, params.n_t);
  for (int i = 0; i < params.n_r; ++i)
    for (int j = 0; j < params.n_t; ++j) {
      const auto [re, im] = normal_pair(eng);
      h(i, j) = {s * re, s * im};
    }
  return ChannelMatrix(std::move(h), seed);
}

CodingPair make_coding_pair(const SystemParams& params, const ChannelMatrix& h, SpinVector g,
                            SpinVector f) {
  const double snr = evaluate_snr(params, h, g, f);
  return CodingPair{std::move(g), std::move(f), snr};
}

SpinVector random_spin_vector(Eigen::Index n, std::uint64_t seed, bool first_positive) {
  Engine eng = make_engine(seed);
  SpinVector::Storage s(n);
  for (Eigen::Index i = 0; i < n; ++i) s[i] = (eng() >> 63) ? -1 : 1;
  if (first_positive && n > 0) s[0] = 1;
  return SpinVector(std::move(s));
}

Eigen::VectorXcd random_unit_vector(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("random_unit_vector: n must be >= 1");
  Engine eng = make_engine(seed);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [re, im] = normal_pair(eng);
    v[i] = {re, im};
  }
  return v.normalized();
}

}  // namespace onebit
