#include "onebit/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace onebit {

AnnealReport report_anneal_distribution(const QuboInstance& inst, const SampleSet& ss,
                                        double es_energy, double tol) {
  if (ss.empty()) throw InvalidArgument("anneal report: empty sample set");
  if (ss.total_reads < 1) throw InvalidArgument("anneal report: total_reads must be >= 1");
  AnnealReport rep;
  rep.rows.reserve(ss.samples.size());
  for (const auto& s : ss.samples) {
    AnnealRow r;
    r.bits = s.bits;
    r.energy = s.energy;
    r.objective = inst.spin_objective(s.energy);
    r.occurrences = s.occurrences;
    r.probability = double(s.occurrences) / double(ss.total_reads);
    r.attains_es = std::abs(s.energy - es_energy) <= tol * std::max(1.0, std::abs(es_energy));
    rep.rows.push_back(std::move(r));
  }
  // scale > 0, so descending objective is ascending energy.
  std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const AnnealRow& a, const AnnealRow& b) {
    return a.objective > b.objective;
  });

  std::map<std::string, int> class_of;
  std::vector<double> class_prob;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    auto& r = rep.rows[i];
    r.rank = int(i) + 1;
    const std::string key = bits_to_string(r.bits);
    std::string twin = key;
    for (char& c : twin) c = c == '1' ? '0' : '1';
    const std::string canon = std::min(key, twin);
    auto [it, inserted] = class_of.try_emplace(canon, int(class_prob.size()));
    if (inserted) class_prob.push_back(0.0);
    r.symmetry_class = it->second;
    class_prob[std::size_t(it->second)] += r.probability;
  }
  for (auto& r : rep.rows) r.class_probability = class_prob[std::size_t(r.symmetry_class)];
  rep.top_class_probability = rep.rows.front().class_probability;
  return rep;
}

void write_anneal_csv(const AnnealReport& report, std::ostream& os, double snr_scale) {
  os << "rank,bits,energy,objective";
  if (snr_scale > 0) os << ",snr";
  os << ",occurrences,probability,symmetry_class,class_probability,attains_es\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : report.rows) {
    os << r.rank << ',' << bits_to_string(r.bits) << ',' << num(r.energy) << ',' << num(r.objective);
    if (snr_scale > 0) os << ',' << num(snr_scale * r.objective);
    os << ',' << r.occurrences << ',' << num(r.probability) << ',' << r.symmetry_class << ','
       << num(r.class_probability) << ',' << (r.attains_es ? 1 : 0) << '\n';
  }
}

TimingReport report_timing(const TimingMap& stages) {
  TimingReport rep;
  rep.stages = stages;
  std::size_t width = 5;
  for (const auto& [name, us] : stages) {
    rep.total_us += us;
    width = std::max(width, name.size());
  }
  std::ostringstream os;
  char buf[64];
  auto line = [&](const std::string& name, double us) {
    std::snprintf(buf, sizeof buf, "%14.0f", us);
    os << name << std::string(width - name.size() + 2, ' ') << buf << '\n';
  };
  os << "Time" << std::string(width - 4 + 2, ' ') << "          usec\n";
  for (const auto& [name, us] : stages) line(name, us);
  line("Total", rep.total_us);
  rep.table = os.str();
  return rep;
}

}  // namespace onebit
