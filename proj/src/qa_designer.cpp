#include "onebit/qa_designer.hpp"

#include "onebit/rng.hpp"

namespace onebit {

void QaControl::validate() const {
  ctrl.validate();
  if (num_restarts_l < 1) throw InvalidArgument("number of restarts L must be >= 1");
  if (sampler == nullptr) throw InvalidArgument("qa_design: no sampler backend");
  sampler_cfg.validate();
  if (!initial_g.empty() && int(initial_g.size()) != num_restarts_l)
    throw InvalidArgument("initial_g must hold exactly L vectors");
}

const Sample& pick_best(const SampleSet& ss) {
  const Sample* best = &ss.best();
  for (const auto& s : ss.samples) {
    if (s.energy < best->energy || (s.energy == best->energy && lex_less(s.bits, best->bits)))
      best = &s;
  }
  return *best;
}

std::vector<SpinVector> sign_distinct_spins(Eigen::Index n) {
  if (n < 1 || n > 30) throw InvalidArgument("sign_distinct_spins: n out of range");
  std::vector<SpinVector> out;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    SpinVector::Storage s(n);
    s[0] = 1;
    for (Eigen::Index k = 1; k < n; ++k) s[k] = ((idx >> (k - 1)) & 1u) ? -1 : 1;
    out.emplace_back(std::move(s));
  }
  return out;
}

namespace {

DesignResult run_restart(const SystemParams& params, const ChannelMatrix& h, const QaControl& qc,
                         int restart, const SpinVector& g0, const SampleObserver& observer) {
  SpinVector g = g0;
  SpinVector f = SpinVector::ones(params.n_t);
  double rho_old = evaluate_snr(params, h, g, f);
  double rho_new = rho_old;
  DesignResult out;

  auto solve = [&](const Eigen::MatrixXd& gram, int k, char half) {
    const QuboInstance inst = build_qubo_from_gram(gram);
    SamplerConfig cfg = qc.sampler_cfg;
    cfg.seed = derive_seed(qc.sampler_cfg.seed,
                           {std::uint64_t(restart), std::uint64_t(k), std::uint64_t(half)});
    const SampleSet ss = qc.sampler->sample(inst, cfg);
    if (ss.empty()) throw Error("sampler '" + qc.sampler->name() + "' returned no samples");
    if (observer) observer(restart, k, half, inst, ss);
    return binary_to_spin(pick_best(ss).bits);
  };

  int k = 0;
  for (;;) {
    ++k;
    if (k > 1) rho_old = rho_new;
    f = solve(objective_gram_f(h, g), k, 'f');
    g = solve(objective_gram_g(h, f), k, 'g');
    rho_new = evaluate_snr(params, h, g, f);
    out.trace.push_back(rho_new);
    if (relative_change(rho_new, rho_old) < qc.ctrl.rel_tol_delta) {
      out.converged_by_tolerance = true;
      break;
    }
    if (k >= qc.ctrl.max_iters_k) break;
  }
  out.iterations_used = k;
  out.pair = CodingPair{g, f, rho_new};
  return out;
}

}  // namespace

QaDesignResult qa_design(const SystemParams& params, const ChannelMatrix& h, const QaControl& qc,
                         const SampleObserver& observer) {
  params.validate();
  h.check_shape(params);
  qc.validate();
  for (const auto& g : qc.initial_g)
    if (g.size() != params.n_r) throw DimensionError("initial_g", params.n_r, long(g.size()));

  QaDesignResult out;
  out.restarts.reserve(std::size_t(qc.num_restarts_l));
  for (int l = 0; l < qc.num_restarts_l; ++l) {
    RestartOutcome ro;
    ro.g0 = qc.initial_g.empty()
                ? random_spin_vector(params.n_r, derive_seed(qc.restart_seed, {std::uint64_t(l)}))
                : qc.initial_g[std::size_t(l)];
    try {
      ro.result = run_restart(params, h, qc, l, ro.g0, observer);
    } catch (const std::exception& e) {
      ro.error = e.what();
      ++out.failed_restarts;
    }
    if (ro.result && (out.best_restart < 0 ||
                      ro.result->pair.snr > out.restarts[std::size_t(out.best_restart)].result->pair.snr))
      out.best_restart = l;
    out.restarts.push_back(std::move(ro));
  }
  if (out.best_restart < 0)
    throw Error("qa_design: all " + std::to_string(qc.num_restarts_l) +
                " restarts failed; first error: " + out.restarts.front().error);

  const DesignResult& best = *out.restarts[std::size_t(out.best_restart)].result;
  out.pair = best.pair;
  out.iterations_used = best.iterations_used;
  out.converged_by_tolerance = best.converged_by_tolerance;
  out.trace = best.trace;
  return out;
}

}  // namespace onebit
