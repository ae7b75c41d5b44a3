#include "onebit/campaign.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "onebit/linalg.hpp"
#include "onebit/rng.hpp"

namespace onebit {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::es, "es"},           {Method::svd, "svd"},         {Method::rq, "rq"},
    {Method::rqm, "rqm"},         {Method::qa_exact, "qa-exact"}, {Method::qa_sa, "qa-sa"},
    {Method::qa_bridge, "qa-bridge"},
};


std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [k, name] : kMethodNames)
    if (k == m) return name;
  return "?";
}

Method parse_method(std::string_view name) {
  for (const auto& [k, n] : kMethodNames)
    if (n == name) return k;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = list.find(',', pos);
    const std::string_view tok =
        list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (!tok.empty()) out.push_back(parse_method(tok));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

void ExperimentConfig::validate() const {
  params.validate();
  ctrl.validate();
  sampler_cfg.validate();
  if (n_trials < 1) throw InvalidArgument("n_trials must be >= 1");
  if (first_trial < 0) throw InvalidArgument("first_trial must be >= 0");
  if (methods.empty()) throw InvalidArgument("no methods selected");
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  for (Method m : methods) {
    if (m == Method::es && params.n_t + params.n_r > kExhaustiveMaxAntennas)
      throw SizeGuardError("method es needs n_t + n_r <= " + std::to_string(kExhaustiveMaxAntennas));
    if (m == Method::qa_exact && std::max(params.n_t, params.n_r) > kExactMaxVariables)
      throw SizeGuardError("method qa-exact needs n_t, n_r <= " +
                           std::to_string(kExactMaxVariables));
    if (m == Method::qa_bridge && (!bridge || bridge->command.empty()))
      throw InvalidArgument("method qa-bridge needs a bridge command");
  }
}

std::optional<double> CampaignReport::snr(int trial, Method m) const {
  for (const auto& r : rows)
    if (r.trial == trial && r.method == m) return r.snr;
  return std::nullopt;
}

CampaignReport run_campaign(const ExperimentConfig& cfg) {
  cfg.validate();
  const ExactSampler exact;
  const AnnealingSampler annealer;
  std::unique_ptr<BridgeSampler> bridge;
  if (cfg.bridge) bridge = std::make_unique<BridgeSampler>(*cfg.bridge);

  CampaignReport report;
  report.config = cfg;
  const SystemParams& p = cfg.params;

  for (int t = 0; t < cfg.n_trials; ++t) {
    const int trial = cfg.first_trial + t;
    const std::uint64_t seed = cfg.master_seed + std::uint64_t(trial);
    const ChannelMatrix h = generate_channel(p, seed);

    double bound = std::numeric_limits<double>::quiet_NaN();
    try {
      bound = p.power_p * leading_triplet(h).sigma1_sq / p.noise_var;
    } catch (const Error& e) {
      report.violations.push_back("trial " + std::to_string(trial) + ": eigen bound unavailable: " +
                                  e.what());
    }
    report.eigen_bound.push_back(bound);

    for (Method m : cfg.methods) {
      TrialRecord rec;
      rec.trial = trial;
      rec.seed = seed;
      rec.method = m;
      const auto start = std::chrono::steady_clock::now();
      try {
        DesignResult res;
        switch (m) {
          case Method::es:
            res = exhaustive_search(p, h);
            break;
          case Method::svd:
            res = svd_sign_design(p, h);
            break;
          case Method::rq:
            res = rq_design(p, h, cfg.ctrl,
                            cfg.randomize_classical_init
                                ? random_spin_vector(p.n_r, derive_seed(seed, {1}))
                                : SpinVector::ones(p.n_r));
            break;
          case Method::rqm:
            res = rqm_design(p, h, cfg.ctrl, random_unit_vector(p.n_r, derive_seed(seed, {2})));
            break;
          case Method::qa_exact:
          case Method::qa_sa:
          case Method::qa_bridge: {
            QaControl qc;
            qc.ctrl = cfg.ctrl;
            qc.num_restarts_l = cfg.restarts;
            qc.sampler = m == Method::qa_exact ? static_cast<const Sampler*>(&exact)
                         : m == Method::qa_sa  ? static_cast<const Sampler*>(&annealer)
                                               : static_cast<const Sampler*>(bridge.get());
            qc.sampler_cfg = cfg.sampler_cfg;
            qc.sampler_cfg.seed = derive_seed(cfg.sampler_cfg.seed, {seed, 4});
            qc.restart_seed = derive_seed(seed, {3});
            res = qa_design(p, h, qc);
            break;
          }
        }
        rec.snr = res.pair.snr;
        rec.iterations = res.iterations_used;
        rec.converged = res.converged_by_tolerance;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      rec.wall_us = std::chrono::duration_cast<std::chrono::microseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      report.rows.push_back(std::move(rec));
    }

    // Per-trial bounds: every heuristic <= ES <= P lambda_1 / sigma^2.
    const auto es = report.snr(trial, Method::es);
    if (es) {
      for (Method m : cfg.methods) {
        if (m == Method::es) continue;
        const auto v = report.snr(trial, m);
        if (v && *v > *es)
          report.violations.push_back("trial " + std::to_string(trial) + ": " +
                                      std::string(to_string(m)) + " " + fmt_double(*v) +
                                      " exceeds es " + fmt_double(*es));
      }
      // lambda_1 carries the power-iteration tolerance (1e-10 relative).
      if (std::isfinite(bound) && *es > bound * (1.0 + 1e-9))
        report.violations.push_back("trial " + std::to_string(trial) + ": es " + fmt_double(*es) +
                                    " exceeds eigen bound " + fmt_double(bound));
    }
  }

  for (Method m : cfg.methods) {
    MethodSummary s;
    double sum = 0.0, sum2 = 0.0;
    for (const auto& r : report.rows) {
      if (r.method != m) continue;
      s.wall_us += r.wall_us;
      if (!r.snr) {
        ++s.failures;
        continue;
      }
      ++s.count;
      sum += *r.snr;
      sum2 += *r.snr * *r.snr;
    }
    if (s.count > 0) {
      s.mean = sum / s.count;
      s.stddev = s.count > 1 ? std::sqrt(std::max(0.0, (sum2 - s.count * s.mean * s.mean) / (s.count - 1)))
                             : 0.0;
    }
    report.summary[m] = s;
  }
  double bsum = 0.0;
  int bcount = 0;
  for (double b : report.eigen_bound)
    if (std::isfinite(b)) {
      bsum += b;
      ++bcount;
    }
  report.eigen_bound_mean = bcount ? bsum / bcount : std::numeric_limits<double>::quiet_NaN();
  return report;
}

void write_csv(const CampaignReport& report, std::ostream& os) {
  os << "trial,seed,method,snr,iterations,converged,wall_us\n";
  const bool timing = report.config.csv_wall_clock;
  std::size_t row = 0;
  const std::size_t per_trial = report.config.methods.size();
  for (std::size_t t = 0; t < report.eigen_bound.size(); ++t) {
    const int trial = report.config.first_trial + int(t);
    const std::uint64_t seed = report.config.master_seed + std::uint64_t(trial);
    os << trial << ',' << seed << ",eigen-bound," << fmt_double(report.eigen_bound[t]) << ",0,1,0\n";
    for (std::size_t k = 0; k < per_trial; ++k, ++row) {
      const auto& r = report.rows[row];
      os << r.trial << ',' << r.seed << ',' << to_string(r.method) << ','
         << (r.snr ? fmt_double(*r.snr) : std::string("nan")) << ',' << r.iterations << ','
         << (r.converged ? 1 : 0) << ',' << (timing ? r.wall_us : 0) << '\n';
    }
  }
}

nlohmann::ordered_json summary_json(const CampaignReport& report) {
  using nlohmann::ordered_json;
  const auto& c = report.config;
  ordered_json cfg;
  cfg["n_t"] = c.params.n_t;
  cfg["n_r"] = c.params.n_r;
  cfg["power_p"] = c.params.power_p;
  cfg["power_db"] = linear_to_db(c.params.power_p);
  cfg["noise_var"] = c.params.noise_var;
  cfg["n_trials"] = c.n_trials;
  cfg["first_trial"] = c.first_trial;
  cfg["master_seed"] = c.master_seed;
  ordered_json methods = ordered_json::array();
  for (Method m : c.methods) methods.push_back(std::string(to_string(m)));
  cfg["methods"] = methods;
  cfg["delta"] = c.ctrl.rel_tol_delta;
  cfg["max_iters"] = c.ctrl.max_iters_k;
  cfg["restarts"] = c.restarts;
  cfg["reads"] = c.sampler_cfg.num_reads;
  cfg["sa_sweeps"] = c.sampler_cfg.sa_sweeps;
  cfg["sa_beta_range"] = {c.sampler_cfg.sa_beta_range.first, c.sampler_cfg.sa_beta_range.second};
  cfg["randomize_classical_init"] = c.randomize_classical_init;
  if (c.bridge) cfg["bridge_cmd"] = c.bridge->command;

  ordered_json out;
  out["version"] = ONEBIT_VERSION;
  out["config"] = cfg;
  ordered_json ms = ordered_json::object();
  for (Method m : c.methods) {
    const auto& s = report.summary.at(m);
    ms[std::string(to_string(m))] = {{"mean_snr", s.mean},
                                     {"std_snr", s.stddev},
                                     {"mean_snr_db", s.count ? linear_to_db(s.mean) : 0.0},
                                     {"count", s.count},
                                     {"failures", s.failures},
                                     {"wall_us", s.wall_us}};
  }
  out["methods"] = ms;
  out["eigen_bound_mean"] = report.eigen_bound_mean;
  out["violations"] = report.violations;
  return out;
}

}  // namespace onebit
