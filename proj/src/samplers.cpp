#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>

#include "onebit/qubo.hpp"
#include "onebit/rng.hpp"

namespace onebit {

namespace {

BinaryVector bits_of(std::uint32_t state, Eigen::Index n) {
  BinaryVector b(n);
  for (Eigen::Index i = 0; i < n; ++i) b[i] = (state >> i) & 1u;
  return b;
}

// Key whose integer order is the lexicographic order of the bit vector.
std::uint32_t lex_key(std::uint32_t state, int n) {
  std::uint32_t k = 0;
  for (int i = 0; i < n; ++i) k = (k << 1) | ((state >> i) & 1u);
  return k;
}

struct Candidate {
  double energy;
  std::uint32_t key;
  std::uint32_t state;
  bool operator<(const Candidate& o) const {
    return energy < o.energy || (energy == o.energy && key < o.key);
  }
};

}  // namespace

SampleSet solve_exact(const QuboInstance& inst, std::size_t keep) {
  inst.validate();
  const int n = int(inst.size());
  if (n < 1) throw InvalidArgument("solve_exact: empty instance");
  if (n > kExactMaxVariables)
    throw SizeGuardError("solve_exact limited to " + std::to_string(kExactMaxVariables) +
                         " variables (got " + std::to_string(n) + ")");

  const Eigen::MatrixXd& m = inst.coeffs;
  const std::uint64_t count = std::uint64_t{1} << n;
  std::priority_queue<Candidate> heap;  // max-heap: worst kept candidate on top
  std::vector<Candidate> all;
  if (keep == 0) all.reserve(count);

  // Gray-code walk; `energy` is a running estimate, kept candidates get an
  // exact recomputation.
  constexpr double kMargin = 1e-7;
  auto consider = [&](std::uint32_t state, double energy) {
    if (keep == 0) {
      all.push_back({inst.energy(bits_of(state, n)), lex_key(state, n), state});
      return;
    }
    if (heap.size() >= keep && energy > heap.top().energy + kMargin) return;
    const Candidate c{inst.energy(bits_of(state, n)), lex_key(state, n), state};
    if (heap.size() < keep) {
      heap.push(c);
    } else if (c < heap.top()) {
      heap.pop();
      heap.push(c);
    }
  };

  std::vector<double> field(std::size_t(n), 0.0);  // sum_{j != i} m_ij b_j
  std::uint32_t state = 0;
  double energy = 0.0;
  consider(state, energy);
  for (std::uint64_t t = 1; t < count; ++t) {
    const int i = std::countr_zero(t);
    const bool was_set = (state >> i) & 1u;
    const double d = m(i, i) + 2.0 * field[std::size_t(i)];
    energy += was_set ? -d : d;
    state ^= (1u << i);
    const double sgn = was_set ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) field[std::size_t(j)] += sgn * m(j, i);
    consider(state, energy);
  }

  std::vector<Candidate> chosen;
  if (keep == 0) {
    chosen = std::move(all);
  } else {
    while (!heap.empty()) {
      chosen.push_back(heap.top());
      heap.pop();
    }
  }
  std::sort(chosen.begin(), chosen.end());

  SampleSet out;
  out.samples.reserve(chosen.size());
  for (const auto& c : chosen) out.samples.push_back({bits_of(c.state, n), c.energy, 1});
  out.total_reads = long(out.samples.size());
  return out;
}

SampleSet solve_sa(const QuboInstance& inst, const SamplerConfig& cfg) {
  inst.validate();
  cfg.validate();
  const int n = int(inst.size());
  if (n < 1) throw InvalidArgument("solve_sa: empty instance");

  const std::size_t un = std::size_t(n);
  std::vector<double> m(un * un);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[std::size_t(i) * un + std::size_t(j)] = inst.coeffs(i, j);

  std::vector<double> betas(std::size_t(cfg.sa_sweeps));
  const auto [b0, b1] = cfg.sa_beta_range;
  for (int s = 0; s < cfg.sa_sweeps; ++s) {
    const double t = cfg.sa_sweeps == 1 ? 1.0 : double(s) / double(cfg.sa_sweeps - 1);
    betas[std::size_t(s)] = b0 * std::pow(b1 / b0, t);
  }

  std::vector<Sample> raw;
  raw.reserve(std::size_t(cfg.num_reads));
  std::vector<std::uint8_t> b(un);
  std::vector<double> field(un);
  for (int r = 0; r < cfg.num_reads; ++r) {
    Engine eng = make_engine(cfg.seed + std::uint64_t(r));
    for (auto& x : b) x = std::uint8_t(eng() >> 63);
    for (std::size_t i = 0; i < un; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < un; ++j)
        if (j != i && b[j]) acc += m[i * un + j];
      field[i] = acc;
    }
    for (const double beta : betas) {
      for (std::size_t i = 0; i < un; ++i) {
        const double d = m[i * un + i] + 2.0 * field[i];
        const double delta = b[i] ? -d : d;
        bool accept = delta <= 0.0;
        if (!accept) {
          const double x = beta * delta;
          accept = x < 40.0 && uniform01(eng) < std::exp(-x);
        }
        if (!accept) continue;
        const double sgn = b[i] ? -1.0 : 1.0;
        b[i] ^= 1u;
        const double* row = &m[i * un];
        for (std::size_t j = 0; j < un; ++j) field[j] += sgn * row[j];
        field[i] -= sgn * row[i];
      }
    }
    Sample s;
    s.bits = Eigen::Map<const BinaryVector>(b.data(), n);
    raw.push_back(std::move(s));
  }
  return SampleSet::from_samples(inst, std::move(raw));
}

}  // namespace onebit
