#pragma once

// Text documents exchanged with an external sampler process.
//
// Request:  {"n", "sense": "min", "coeffs": [[i, j, value], ...] (i <= j),
//            "num_reads", "annealing_time_us", "ferromagnetic_coupling"}
// Response: {"samples": [{"bits": "0101", "energy", "occurrences"}, ...],
//            "timing": {stage: microseconds, ...}}
// or an error document {"error": code, "detail": text}.
//
// Coefficients follow the usual QUBO dictionary convention: the energy is
// sum over listed (i, j) of value * b_i * b_j, so off-diagonal values are
// twice the symmetric matrix entry.

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "onebit/qubo.hpp"

namespace onebit {

using TimingMap = std::vector<std::pair<std::string, double>>;

class BridgeError : public Error {
 public:
  enum class Kind { transport, parse, validation, remote };
  BridgeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ExchangeParseError : public BridgeError {
 public:
  ExchangeParseError(std::string field, const std::string& what)
      : BridgeError(Kind::parse, "exchange document: " + what + " (field '" + field + "')"),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExchangeRequest {
  QuboInstance instance;
  int num_reads = 1000;
  double annealing_time_us = 1.0;
  double ferromagnetic_coupling = 3.0;
};

struct ExchangeResponse {
  std::vector<Sample> samples;
  TimingMap timing;
};

nlohmann::ordered_json request_to_json(const ExchangeRequest& req);
/// The rebuilt instance carries scale = 1 and offset = 0.
ExchangeRequest request_from_json(const nlohmann::ordered_json& doc);

nlohmann::ordered_json response_to_json(const ExchangeResponse& resp);
/// Throws ExchangeParseError naming the missing or malformed field, or
/// BridgeError(remote) for an error document.
ExchangeResponse response_from_json(const nlohmann::ordered_json& doc);

nlohmann::ordered_json error_document(const std::string& code, const std::string& detail);

}  // namespace onebit
