#include <doctest.h>

#include <set>

#include "oracles.hpp"

using namespace onebit;

namespace {

BinaryVector bits(std::initializer_list<int> v) {
  BinaryVector b(Eigen::Index(v.size()));
  Eigen::Index i = 0;
  for (int x : v) b[i++] = std::uint8_t(x);
  return b;
}

/// Random PSD Gram of the kind the designers produce: Re(a a^H).
Eigen::MatrixXd random_gram(int n, std::uint64_t seed) {
  const Eigen::VectorXcd a = oracle::gaussian(n, 1, seed).col(0);
  return (a * a.adjoint()).real();
}

std::set<std::string> spin_argmax_set(const Eigen::MatrixXd& q) {
  const auto fs = oracle::all_spins(int(q.rows()));
  std::set<std::string> out;
  for (std::size_t i : oracle::spin_argmax(q)) out.insert(fs[i].str());
  return out;
}

std::set<std::string> binary_argmin_as_spins(const Eigen::MatrixXd& m, double tol) {
  const auto bs = oracle::all_binary(int(m.rows()));
  std::set<std::string> out;
  for (std::size_t i : oracle::binary_argmin(m, tol)) out.insert(binary_to_spin(bs[i]).str());
  return out;
}

}  // namespace

TEST_CASE("spin and binary conversions") {
  CHECK(spin_to_binary(SpinVector{1, -1}) == bits({1, 0}));
  CHECK(spin_to_binary(SpinVector{-1, -1, -1}) == bits({0, 0, 0}));
  CHECK(binary_to_spin(bits({1, 0})) == SpinVector{1, -1});
  CHECK(binary_to_spin(bits({0, 0, 0})) == SpinVector{-1, -1, -1});
  CHECK_THROWS_AS(binary_to_spin(bits({2})), InvalidArgument);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SpinVector f = oracle::random_spins(1 + int(s % 16), s);
    CHECK(binary_to_spin(spin_to_binary(f)) == f);
  }
  CHECK(bits_to_string(bits({0, 1, 1})) == "011");
  CHECK(bits_from_string("011") == bits({0, 1, 1}));
  CHECK_THROWS_AS(bits_from_string("01x"), InvalidArgument);
  CHECK(lex_less(bits({0, 1}), bits({1, 0})));
  CHECK_FALSE(lex_less(bits({1, 0}), bits({1, 0})));
}

TEST_CASE("build_qubo_from_gram small cases") {
  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  const QuboInstance a = build_qubo_from_gram(one);
  CHECK(a.coeffs(0, 0) == 0.0);
  CHECK(a.scale == 1.0);
  const SampleSet sa = solve_exact(a);
  REQUIRE(sa.samples.size() == 2);
  CHECK(sa.samples[0].energy == 0.0);
  CHECK(sa.samples[1].energy == 0.0);
  CHECK(sa.best().bits == bits({0}));

  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(2, 2);
  const QuboInstance b = build_qubo_from_gram(ones);
  Eigen::Matrix2d expected;
  expected << 1, -1, -1, 1;
  CHECK(b.coeffs == Eigen::MatrixXd(expected));
  CHECK(b.scale == 4.0);
  CHECK(b.offset == 4.0);
  const SampleSet sb = solve_exact(b);
  REQUIRE(sb.samples.size() == 4);
  CHECK(sb.samples[0].bits == bits({0, 0}));
  CHECK(sb.samples[1].bits == bits({1, 1}));
  CHECK(sb.samples[0].energy == 0.0);
  CHECK(sb.samples[1].energy == 0.0);
  CHECK(sb.samples[2].energy == 1.0);
  CHECK(sb.samples[3].energy == 1.0);
  CHECK(b.spin_objective(0.0) == 4.0);
  CHECK(b.spin_objective(1.0) == 0.0);
}

TEST_CASE("build_qubo_from_gram rejects asymmetric input") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 1;
  CHECK_THROWS_AS(build_qubo_from_gram(m), InvalidArgument);
  CHECK_THROWS_AS(build_qubo_from_gram(Eigen::MatrixXd(2, 3)), DimensionError);
}

TEST_CASE("property: argmin set equals spin argmax set") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const int n = 1 + int(s % 10);
    const Eigen::MatrixXd q = random_gram(n, s);
    const QuboInstance inst = build_qubo_from_gram(q);
    inst.validate();
    CHECK(inst.coeffs.cwiseAbs().maxCoeff() <= 1.0);
    CHECK(binary_argmin_as_spins(inst.coeffs, 1e-12) == spin_argmax_set(q));
  }
}

TEST_CASE("property: energy ordering mirrors spin objective and folding is exact") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int n = 2 + int(s % 11);
    const Eigen::MatrixXd q = random_gram(n, 100 + s);
    const QuboInstance inst = build_qubo_from_gram(q);
    Eigen::MatrixXd q0 = 4.0 * q;
    q0.diagonal() -= 4.0 * q.rowwise().sum();
    const Eigen::VectorXd row = q.rowwise().sum();
    for (const auto& b : oracle::all_binary(n)) {
      const Eigen::VectorXd x = b.cast<double>();
      const Eigen::VectorXd f = 2.0 * x - Eigen::VectorXd::Ones(n);
      const double spin = f.dot(q * f);
      // Spin objective recovered from the energy.
      CHECK(std::abs(inst.spin_objective(inst.energy(b)) - spin) <=
            1e-9 * std::max(1.0, std::abs(spin)));
      // b^T Q0 b = 4 b^T q b - 4 b^T diag(q 1) b.
      const double folded = oracle::qubo_energy(q0, b);
      const double unfolded = 4.0 * x.dot(q * x) - 4.0 * x.dot(row.cwiseProduct(x));
      CHECK(std::abs(folded - unfolded) <= 1e-9 * std::max(1.0, std::abs(folded)));
      CHECK(std::abs(inst.energy(b) - oracle::qubo_energy(inst.coeffs, b)) <= 1e-12);
    }
  }
}

TEST_CASE("property: calibration leaves the argmin set unchanged") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int n = 2 + int(s % 11);
    const Eigen::MatrixXd q = random_gram(n, 300 + s);
    const QuboInstance inst = build_qubo_from_gram(q);
    Eigen::MatrixXd q0 = 4.0 * q;
    q0.diagonal() -= 4.0 * q.rowwise().sum();
    const Eigen::MatrixXd uncalibrated = -q0;
    CHECK(binary_argmin_as_spins(uncalibrated, 1e-12 * inst.scale) ==
          binary_argmin_as_spins(inst.coeffs, 1e-12));
  }
}

TEST_CASE("solve_exact returns the lowest states in order") {
  const QuboInstance inst = build_qubo_from_gram(random_gram(6, 17));
  const SampleSet all = solve_exact(inst, 0);
  CHECK(all.samples.size() == 64);
  CHECK(all.total_reads == 64);
  all.check_invariants(inst);
  const SampleSet top = solve_exact(inst, 5);
  REQUIRE(top.samples.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(top.samples[i].bits == all.samples[i].bits);
    CHECK(top.samples[i].energy == all.samples[i].energy);
  }
  const auto mins = oracle::binary_argmin(inst.coeffs, 0.0);
  CHECK(all.best().bits == oracle::all_binary(6)[mins.front()]);

  QuboInstance big;
  big.coeffs = Eigen::MatrixXd::Zero(25, 25);
  CHECK_THROWS_AS(solve_exact(big), SizeGuardError);
}

TEST_CASE("solve_sa on a zero instance") {
  QuboInstance z;
  z.coeffs = Eigen::MatrixXd::Zero(4, 4);
  SamplerConfig cfg;
  cfg.num_reads = 50;
  const SampleSet ss = solve_sa(z, cfg);
  ss.check_invariants(z);
  CHECK(ss.total_reads == 50);
  for (const auto& s : ss.samples) CHECK(s.energy == 0.0);
}

TEST_CASE("solve_sa finds the exact minimum on a rank-1 Gram, n = 8") {
  const QuboInstance inst = build_qubo_from_gram(random_gram(8, 4242));
  SamplerConfig cfg;
  cfg.seed = 9;
  const SampleSet ss = solve_sa(inst, cfg);
  ss.check_invariants(inst);
  CHECK(ss.total_reads == 1000);
  CHECK(ss.best().energy == solve_exact(inst).best().energy);

  double p = 0.0;
  for (const auto& s : ss.samples) p += double(s.occurrences) / double(ss.total_reads);
  CHECK(std::abs(p - 1.0) <= 1e-9);
}

TEST_CASE("solve_sa is deterministic per seed") {
  const QuboInstance inst = build_qubo_from_gram(random_gram(7, 5));
  SamplerConfig cfg;
  cfg.num_reads = 200;
  cfg.seed = 77;
  const SampleSet a = solve_sa(inst, cfg);
  const SampleSet b = solve_sa(inst, cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].bits == b.samples[i].bits);
    CHECK(a.samples[i].energy == b.samples[i].energy);
    CHECK(a.samples[i].occurrences == b.samples[i].occurrences);
  }
}

TEST_CASE("backends agree on energies and the exact minimum dominates") {
  const QuboInstance inst = build_qubo_from_gram(random_gram(8, 31337));
  SamplerConfig cfg;
  cfg.num_reads = 300;
  const ExactSampler exact;
  const AnnealingSampler sa;
  const SampleSet e = exact.sample(inst, cfg);
  const SampleSet s = sa.sample(inst, cfg);
  e.check_invariants(inst);
  s.check_invariants(inst);
  CHECK(e.best().energy <= s.best().energy);
  CHECK(exact.name() == "exact");
  CHECK(sa.name() == "sa");
}

TEST_CASE("SampleSet merges duplicates and checks invariants") {
  Eigen::MatrixXd m(2, 2);
  m << 1, -1, -1, 1;
  QuboInstance inst;
  inst.coeffs = m;
  std::vector<Sample> raw = {{bits({1, 0}), 99.0, 2}, {bits({1, 1}), 0.0, 1}, {bits({1, 0}), 0.0, 3},
                             {bits({0, 0}), 0.0, 1}};
  const SampleSet ss = SampleSet::from_samples(inst, raw);
  REQUIRE(ss.samples.size() == 3);
  CHECK(ss.total_reads == 7);
  CHECK(ss.samples[0].bits == bits({0, 0}));
  CHECK(ss.samples[1].bits == bits({1, 1}));
  CHECK(ss.samples[2].bits == bits({1, 0}));
  CHECK(ss.samples[2].energy == 1.0);
  CHECK(ss.samples[2].occurrences == 5);
  ss.check_invariants(inst);

  SampleSet broken = ss;
  broken.total_reads = 8;
  CHECK_THROWS_AS(broken.check_invariants(inst), Error);
  broken = ss;
  broken.samples[0].energy = 0.5;
  CHECK_THROWS_AS(broken.check_invariants(inst), Error);
  broken = ss;
  std::swap(broken.samples[0], broken.samples[2]);
  CHECK_THROWS_AS(broken.check_invariants(inst), Error);
  CHECK_THROWS_AS(SampleSet{}.best(), Error);
}

TEST_CASE("sampler config validation") {
  SamplerConfig c;
  c.num_reads = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.sa_beta_range = {1.0, 0.5};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.sa_sweeps = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}
