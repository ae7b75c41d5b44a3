// onebit: design 1-bit analogue pre/post-coding vectors for point-to-point
// MIMO and run Monte-Carlo comparisons.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "onebit/onebit.hpp"

using namespace onebit;

namespace {

struct Options {
  int nt = 8;
  int nr = 8;
  double power_db = 0.0;
  double noise_var = 1.0;
  int trials = 1000;
  int first_trial = 0;
  std::uint64_t seed = 1;
  std::string methods = "es,svd,rq,rqm,qa-sa";
  double delta = 0.01;
  int max_iters = 10;
  int restarts = 10;
  int reads = 1000;
  int sweeps = 100;
  double beta_min = 0.1;
  double beta_max = 10.0;
  std::string sampler = "sa";
  std::string bridge_cmd;
  double anneal_us = 1.0;
  double chain_strength = 3.0;
  std::string out;
  std::string summary;
  bool randomize_init = false;
  bool csv_timing = false;
  std::uint64_t g_seed = 0;
  std::string step = "f";

  SystemParams params() const {
    SystemParams p;
    p.n_t = nt;
    p.n_r = nr;
    p.power_p = db_to_linear(power_db);
    p.noise_var = noise_var;
    p.validate();
    return p;
  }
  IterControl ctrl() const { return {delta, max_iters}; }
  SamplerConfig sampler_cfg() const {
    SamplerConfig c;
    c.num_reads = reads;
    c.seed = seed;
    c.sa_sweeps = sweeps;
    c.sa_beta_range = {beta_min, beta_max};
    return c;
  }
  std::optional<BridgeEndpoint> bridge() const {
    if (bridge_cmd.empty()) return std::nullopt;
    return BridgeEndpoint{bridge_cmd, anneal_us, chain_strength};
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::unique_ptr<Sampler> make_sampler(const Options& o) {
  if (o.sampler == "exact") return std::make_unique<ExactSampler>();
  if (o.sampler == "sa") return std::make_unique<AnnealingSampler>();
  auto b = o.bridge();
  if (!b) throw InvalidArgument("--sampler bridge needs --bridge-cmd");
  return std::make_unique<BridgeSampler>(*b);
}

void print_result(std::ostream& os, const std::string& name, const DesignResult& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-10s snr=%.6f (%.3f dB) iters=%d converged=%d", name.c_str(),
                r.pair.snr, linear_to_db(r.pair.snr), r.iterations_used,
                r.converged_by_tolerance ? 1 : 0);
  os << buf << "  g=" << r.pair.g.str() << " f=" << r.pair.f.str();
  if (!r.trace.empty()) {
    os << "  trace=[";
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.6g", i ? " " : "", r.trace[i]);
      os << buf;
    }
    os << ']';
  }
  os << '\n';
}

nlohmann::ordered_json result_json(const DesignResult& r) {
  return {{"snr", r.pair.snr},        {"iterations", r.iterations_used},
          {"converged", r.converged_by_tolerance}, {"g", r.pair.g.str()},
          {"f", r.pair.f.str()},      {"trace", r.trace}};
}

int cmd_campaign(const Options& o) {
  ExperimentConfig cfg;
  cfg.params = o.params();
  cfg.n_trials = o.trials;
  cfg.first_trial = o.first_trial;
  cfg.master_seed = o.seed;
  cfg.methods = parse_methods(o.methods);
  cfg.ctrl = o.ctrl();
  cfg.restarts = o.restarts;
  cfg.sampler_cfg = o.sampler_cfg();
  cfg.bridge = o.bridge();
  cfg.randomize_classical_init = o.randomize_init;
  cfg.csv_wall_clock = o.csv_timing;

  const CampaignReport rep = run_campaign(cfg);
  {
    Output out(o.out);
    write_csv(rep, out.stream());
  }
  const auto summary = summary_json(rep);
  if (!o.summary.empty()) {
    Output s(o.summary);
    s.stream() << summary.dump(2) << '\n';
  }
  std::ostream& log = o.out.empty() ? std::cerr : std::cout;
  char buf[160];
  for (Method m : cfg.methods) {
    const auto& s = rep.summary.at(m);
    std::snprintf(buf, sizeof buf, "%-10s mean=%.6f (%.3f dB) std=%.6f n=%d failures=%d wall=%.3fs\n",
                  std::string(to_string(m)).c_str(), s.mean, s.count ? linear_to_db(s.mean) : 0.0,
                  s.stddev, s.count, s.failures, double(s.wall_us) * 1e-6);
    log << buf;
  }
  std::snprintf(buf, sizeof buf, "%-10s mean=%.6f (%.3f dB)\n", "eigen", rep.eigen_bound_mean,
                linear_to_db(rep.eigen_bound_mean));
  log << buf;
  for (const auto& v : rep.violations) log << "violation: " << v << '\n';
  return rep.violations.empty() ? 0 : 2;
}

int cmd_solve_one(const Options& o) {
  const SystemParams p = o.params();
  const ChannelMatrix h = generate_channel(p, o.seed);
  const IterControl ctrl = o.ctrl();
  nlohmann::ordered_json doc;
  doc["seed"] = o.seed;
  std::ostream& log = o.out.empty() ? std::cout : std::cerr;

  auto run = [&](const std::string& name, auto&& fn) {
    try {
      const DesignResult r = fn();
      print_result(log, name, r);
      doc[name] = result_json(r);
    } catch (const std::exception& e) {
      log << name << " failed: " << e.what() << '\n';
      doc[name] = {{"error", e.what()}};
    }
  };

  const auto t = leading_triplet(h);
  const double bound = p.power_p * t.sigma1_sq / p.noise_var;
  log << "eigen bound P*lambda1/sigma^2 = " << bound << " (" << linear_to_db(bound) << " dB)\n";
  doc["eigen_bound"] = bound;
  if (p.n_t + p.n_r <= kExhaustiveMaxAntennas) run("es", [&] { return exhaustive_search(p, h); });
  run("svd", [&] { return svd_sign_design(p, h); });
  run("rq", [&] { return rq_design(p, h, ctrl, SpinVector::ones(p.n_r)); });
  run("rqm", [&] {
    return rqm_design(p, h, ctrl, random_unit_vector(p.n_r, derive_seed(o.seed, {2})));
  });
  const auto sampler = make_sampler(o);
  run("qa-" + o.sampler, [&]() -> DesignResult {
    QaControl qc;
    qc.ctrl = ctrl;
    qc.num_restarts_l = o.restarts;
    qc.sampler = sampler.get();
    qc.sampler_cfg = o.sampler_cfg();
    qc.restart_seed = derive_seed(o.seed, {3});
    QaDesignResult r = qa_design(p, h, qc);
    for (std::size_t l = 0; l < r.restarts.size(); ++l) {
      const auto& ro = r.restarts[l];
      log << "  restart " << l << " g0=" << ro.g0.str();
      if (ro.result) log << " snr=" << ro.result->pair.snr << " iters=" << ro.result->iterations_used;
      else log << " failed: " << ro.error;
      log << '\n';
    }
    return r;
  });
  if (!o.out.empty()) {
    Output out(o.out);
    out.stream() << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_anneal_report(const Options& o) {
  using clock = std::chrono::steady_clock;
  auto us = [](clock::duration d) {
    return double(std::chrono::duration_cast<std::chrono::microseconds>(d).count());
  };
  const SystemParams p = o.params();
  const ChannelMatrix h = generate_channel(p, o.seed);
  const auto sampler = make_sampler(o);
  const SamplerConfig cfg = o.sampler_cfg();

  SpinVector g = random_spin_vector(p.n_r, o.g_seed);
  const auto t0 = clock::now();
  QuboInstance inst = build_qubo_from_gram(objective_gram_f(h, g));
  if (o.step == "g") {
    // Previous half-step solved exactly, then the post-coding QUBO.
    const SpinVector f = binary_to_spin(solve_exact(inst, 1).best().bits);
    inst = build_qubo_from_gram(objective_gram_g(h, f));
  }
  const auto t1 = clock::now();
  const SampleSet ss = sampler->sample(inst, cfg);
  const auto t2 = clock::now();
  const double es_energy =
      inst.size() <= kExactMaxVariables ? solve_exact(inst, 1).best().energy : ss.best().energy;
  const AnnealReport rep = report_anneal_distribution(inst, ss, es_energy);
  const auto t3 = clock::now();

  {
    Output out(o.out);
    write_anneal_csv(rep, out.stream(), p.snr_scale());
  }
  std::ostream& log = o.out.empty() ? std::cerr : std::cout;
  log << "step " << o.step << ", " << ss.total_reads << " reads, " << rep.rows.size()
      << " distinct states; block optimum objective " << inst.spin_objective(es_energy)
      << ", top symmetry class probability " << rep.top_class_probability << '\n';
  if (p.n_t + p.n_r <= kExhaustiveMaxAntennas)
    log << "exhaustive search SNR " << exhaustive_search(p, h).pair.snr << '\n';

  TimingMap timing;
  if (auto* b = dynamic_cast<const BridgeSampler*>(sampler.get()); b && !b->last_timing().empty()) {
    timing = b->last_timing();
  } else {
    timing = {{kProgrammingTime, us(t1 - t0)}, {kAnnealTime, us(t2 - t1)},
              {kPostProcessing, us(t3 - t2)}};
  }
  log << report_timing(timing).table;
  return 0;
}

int cmd_gen_channel(const Options& o) {
  const SystemParams p = o.params();
  const ChannelMatrix h = generate_channel(p, o.seed);
  nlohmann::ordered_json doc;
  doc["n_r"] = h.n_r();
  doc["n_t"] = h.n_t();
  doc["seed"] = o.seed;
  doc["distribution"] = "CN(0,1)";
  nlohmann::ordered_json re = nlohmann::ordered_json::array(), im = nlohmann::ordered_json::array();
  for (int i = 0; i < h.n_r(); ++i) {
    nlohmann::ordered_json rr = nlohmann::ordered_json::array(), ii = nlohmann::ordered_json::array();
    for (int j = 0; j < h.n_t(); ++j) {
      rr.push_back(h.entries()(i, j).real());
      ii.push_back(h.entries()(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  doc["real"] = re;
  doc["imag"] = im;
  Output out(o.out);
  out.stream() << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-bit analogue pre/post-coding design for point-to-point MIMO"};
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
  app.require_subcommand(1);
  Options o;

  app.add_option("--nt", o.nt, "transmit antennas")->check(CLI::PositiveNumber);
  app.add_option("--nr", o.nr, "receive antennas")->check(CLI::PositiveNumber);
  app.add_option("--power-db", o.power_db, "transmit power P in dB");
  app.add_option("--noise-var", o.noise_var, "noise variance sigma^2")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "master seed (channel seed for single-channel commands)");
  app.add_option("--delta", o.delta, "relative tolerance for the alternating designs");
  app.add_option("--max-iters", o.max_iters, "iteration cap K");
  app.add_option("--restarts", o.restarts, "restarts L for the QA design");
  app.add_option("--reads", o.reads, "anneals per sampler call");
  app.add_option("--sweeps", o.sweeps, "SA sweeps per read");
  app.add_option("--beta-min", o.beta_min, "SA initial inverse temperature");
  app.add_option("--beta-max", o.beta_max, "SA final inverse temperature");
  app.add_option("--sampler", o.sampler, "QUBO backend")
      ->check(CLI::IsMember({"exact", "sa", "bridge"}));
  app.add_option("--bridge-cmd", o.bridge_cmd, "external sampler command (stdin/stdout protocol)");
  app.add_option("--anneal-us", o.anneal_us, "annealing time sent to the bridge");
  app.add_option("--chain-strength", o.chain_strength, "ferromagnetic coupling sent to the bridge");
  app.add_option("--out", o.out, "output file (stdout when omitted)");

  auto* campaign = app.add_subcommand("campaign", "Monte-Carlo comparison over seeded channels");
  campaign->add_option("--trials", o.trials, "channel realizations")->check(CLI::PositiveNumber);
  campaign->add_option("--first-trial", o.first_trial, "index of the first trial");
  campaign->add_option("--methods", o.methods, "comma list of es,svd,rq,rqm,qa-exact,qa-sa,qa-bridge");
  campaign->add_option("--summary", o.summary, "write the JSON summary here");
  campaign->add_flag("--randomize-init", o.randomize_init, "random spin start for rq");
  campaign->add_flag("--csv-timing", o.csv_timing, "record wall-clock microseconds in the CSV");

  auto* anneal = app.add_subcommand("anneal-report", "ranked sample distribution for one QUBO step");
  anneal->add_option("--g-seed", o.g_seed, "seed of the fixed post-coding vector");
  anneal->add_option("--step", o.step, "f (pre-coding) or g (post-coding)")
      ->check(CLI::IsMember({"f", "g"}));

  auto* solve = app.add_subcommand("solve-one", "all methods on one channel with traces");
  auto* gen = app.add_subcommand("gen-channel", "dump a channel realization as JSON");
  for (auto* sub : {campaign, anneal, solve, gen}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*campaign) return cmd_campaign(o);
    if (*anneal) return cmd_anneal_report(o);
    if (*solve) return cmd_solve_one(o);
    if (*gen) return cmd_gen_channel(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
