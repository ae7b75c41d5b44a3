// Offline stand-in for the annealer bridge: reads one request document on
// stdin, solves it locally, writes one response document on stdout.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <iterator>

#include "onebit/exchange.hpp"
#include "onebit/qubo.hpp"

using namespace onebit;

int main(int argc, char** argv) {
  CLI::App app{"Local sampler speaking the QUBO exchange protocol on stdin/stdout"};
  std::string mode = "sa";
  SamplerConfig cfg;
  std::size_t keep = 32;
  app.add_option("--mode", mode, "exact | sa")->check(CLI::IsMember({"exact", "sa"}));
  app.add_option("--seed", cfg.seed, "SA seed");
  app.add_option("--sweeps", cfg.sa_sweeps, "SA sweeps per read");
  app.add_option("--beta-min", cfg.sa_beta_range.first);
  app.add_option("--beta-max", cfg.sa_beta_range.second);
  app.add_option("--keep", keep, "lowest states returned in exact mode (0 = all)");
  CLI11_PARSE(app, argc, argv);

  const std::string input{std::istreambuf_iterator<char>(std::cin), {}};
  ExchangeRequest req;
  try {
    req = request_from_json(nlohmann::ordered_json::parse(input));
  } catch (const std::exception& e) {
    std::cout << error_document("parse", e.what()).dump() << '\n';
    return 0;
  }

  using clock = std::chrono::steady_clock;
  auto us = [](clock::duration d) {
    return double(std::chrono::duration_cast<std::chrono::microseconds>(d).count());
  };
  try {
    cfg.num_reads = req.num_reads;
    const auto t0 = clock::now();
    SampleSet ss = mode == "exact" ? solve_exact(req.instance, keep) : solve_sa(req.instance, cfg);
    const auto t1 = clock::now();
    ExchangeResponse resp{ss.samples, {}};
    const auto t2 = clock::now();
    resp.timing = {{"Anneal time", us(t1 - t0)}, {"Post processing", us(t2 - t1)}};
    std::cout << response_to_json(resp).dump() << '\n';
  } catch (const std::exception& e) {
    std::cout << error_document("solver", e.what()).dump() << '\n';
  }
  return 0;
}
