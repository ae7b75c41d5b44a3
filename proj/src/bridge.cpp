#include "onebit/bridge.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace onebit {

namespace {

// Owns a mkstemp file and removes it on scope exit.
class TempFile {
 public:
  TempFile() {
    std::string pattern = (std::filesystem::temp_directory_path() / "onebit-qubo-XXXXXX").string();
    const int fd = ::mkstemp(pattern.data());
    if (fd < 0)
      throw BridgeError(BridgeError::Kind::transport, "cannot create temporary request file");
    ::close(fd);
    path_ = pattern;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out.push_back(c);
  }
  return out + "'";
}

std::string run_with_stdin(const std::string& command, const std::string& input) {
  TempFile req;
  {
    std::ofstream os(req.path(), std::ios::binary);
    os << input;
    if (!os) throw BridgeError(BridgeError::Kind::transport, "cannot write request file");
  }
  const std::string cmd = "(" + command + ") < " + shell_quote(req.path());
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr)
    throw BridgeError(BridgeError::Kind::transport, "cannot start bridge command: " + command);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw BridgeError(BridgeError::Kind::transport,
                      "bridge command failed (status " + std::to_string(status) + "): " + command);
  return out;
}

}  // namespace

BridgeReply bridge_client_call(const QuboInstance& inst, const SamplerConfig& cfg,
                               const BridgeEndpoint& endpoint) {
  inst.validate();
  cfg.validate();
  if (endpoint.command.empty())
    throw BridgeError(BridgeError::Kind::transport, "no bridge command configured");

  ExchangeRequest req{inst, cfg.num_reads, endpoint.annealing_time_us,
                      endpoint.ferromagnetic_coupling};
  const std::string raw = run_with_stdin(endpoint.command, request_to_json(req).dump());

  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    throw ExchangeParseError("<document>", std::string("not valid JSON: ") + e.what());
  }
  ExchangeResponse resp = response_from_json(doc);

  for (std::size_t i = 0; i < resp.samples.size(); ++i) {
    const auto& s = resp.samples[i];
    if (s.bits.size() != inst.size())
      throw BridgeError(BridgeError::Kind::validation,
                        "sample " + std::to_string(i) + " has " + std::to_string(s.bits.size()) +
                            " bits, instance has " + std::to_string(inst.size()));
    const double e = inst.energy(s.bits);
    if (std::abs(s.energy - e) > 1e-6 * std::max(1.0, std::abs(e)))
      throw BridgeError(BridgeError::Kind::validation,
                        "sample " + std::to_string(i) + " reports energy " +
                            std::to_string(s.energy) + ", instance gives " + std::to_string(e));
  }
  if (resp.samples.empty())
    throw BridgeError(BridgeError::Kind::validation, "bridge returned no samples");

  BridgeReply reply;
  reply.samples = SampleSet::from_samples(inst, std::move(resp.samples));
  reply.timing = std::move(resp.timing);
  return reply;
}

SampleSet BridgeSampler::sample(const QuboInstance& inst, const SamplerConfig& cfg) const {
  std::lock_guard lock(mu_);
  BridgeReply r = bridge_client_call(inst, cfg, endpoint_);
  last_timing_ = std::move(r.timing);
  return std::move(r.samples);
}

TimingMap BridgeSampler::last_timing() const {
  std::lock_guard lock(mu_);
  return last_timing_;
}

}  // namespace onebit
