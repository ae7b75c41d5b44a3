#include "onebit/exchange.hpp"

namespace onebit {

using nlohmann::ordered_json;

namespace {

const ordered_json& require(const ordered_json& doc, const char* field) {
  if (!doc.is_object()) throw ExchangeParseError(field, "document is not an object");
  const auto it = doc.find(field);
  if (it == doc.end()) throw ExchangeParseError(field, "missing field");
  return *it;
}

double require_number(const ordered_json& doc, const char* field) {
  const auto& v = require(doc, field);
  if (!v.is_number()) throw ExchangeParseError(field, "expected a number");
  return v.get<double>();
}

long require_integer(const ordered_json& doc, const char* field) {
  const auto& v = require(doc, field);
  if (!v.is_number_integer()) throw ExchangeParseError(field, "expected an integer");
  return v.get<long>();
}

}  // namespace

ordered_json request_to_json(const ExchangeRequest& req) {
  const auto& m = req.instance.coeffs;
  ordered_json coeffs = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      const double v = i == j ? m(i, i) : 2.0 * m(i, j);
      if (v != 0.0) coeffs.push_back({i, j, v});
    }
  ordered_json doc;
  doc["n"] = req.instance.size();
  doc["sense"] = "min";
  doc["coeffs"] = std::move(coeffs);
  doc["num_reads"] = req.num_reads;
  doc["annealing_time_us"] = req.annealing_time_us;
  doc["ferromagnetic_coupling"] = req.ferromagnetic_coupling;
  return doc;
}

ExchangeRequest request_from_json(const ordered_json& doc) {
  ExchangeRequest req;
  const long n = require_integer(doc, "n");
  if (n < 1) throw ExchangeParseError("n", "must be >= 1");
  const auto& sense = require(doc, "sense");
  if (!sense.is_string() || sense.get<std::string>() != "min")
    throw ExchangeParseError("sense", "expected \"min\"");
  const auto& coeffs = require(doc, "coeffs");
  if (!coeffs.is_array()) throw ExchangeParseError("coeffs", "expected an array");

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& t : coeffs) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
        !t[1].is_number_integer() || !t[2].is_number())
      throw ExchangeParseError("coeffs", "entries must be [i, j, value]");
    const long i = t[0].get<long>();
    const long j = t[1].get<long>();
    if (i < 0 || j < i || j >= n) throw ExchangeParseError("coeffs", "index outside upper triangle");
    const double v = t[2].get<double>();
    if (i == j) {
      m(i, i) += v;
    } else {
      m(i, j) += 0.5 * v;
      m(j, i) += 0.5 * v;
    }
  }
  req.instance.coeffs = std::move(m);
  req.num_reads = int(require_integer(doc, "num_reads"));
  req.annealing_time_us = require_number(doc, "annealing_time_us");
  req.ferromagnetic_coupling = require_number(doc, "ferromagnetic_coupling");
  return req;
}

ordered_json response_to_json(const ExchangeResponse& resp) {
  ordered_json samples = ordered_json::array();
  for (const auto& s : resp.samples)
    samples.push_back({{"bits", bits_to_string(s.bits)},
                       {"energy", s.energy},
                       {"occurrences", s.occurrences}});
  ordered_json timing = ordered_json::object();
  for (const auto& [stage, us] : resp.timing) timing[stage] = us;
  ordered_json doc;
  doc["samples"] = std::move(samples);
  doc["timing"] = std::move(timing);
  return doc;
}

ExchangeResponse response_from_json(const ordered_json& doc) {
  if (doc.is_object() && doc.contains("error")) {
    const auto& code = doc["error"];
    std::string detail = doc.contains("detail") && doc["detail"].is_string()
                             ? doc["detail"].get<std::string>()
                             : std::string();
    throw BridgeError(BridgeError::Kind::remote,
                      "bridge reported error '" + (code.is_string() ? code.get<std::string>() : code.dump()) +
                          "': " + detail);
  }
  ExchangeResponse resp;
  const auto& samples = require(doc, "samples");
  if (!samples.is_array()) throw ExchangeParseError("samples", "expected an array");
  for (const auto& s : samples) {
    Sample out;
    const auto& bits = require(s, "bits");
    if (!bits.is_string()) throw ExchangeParseError("bits", "expected a 0/1 string");
    try {
      out.bits = bits_from_string(bits.get<std::string>());
    } catch (const InvalidArgument& e) {
      throw ExchangeParseError("bits", e.what());
    }
    out.energy = require_number(s, "energy");
    out.occurrences = require_integer(s, "occurrences");
    if (out.occurrences < 1) throw ExchangeParseError("occurrences", "must be >= 1");
    resp.samples.push_back(std::move(out));
  }
  const auto& timing = require(doc, "timing");
  if (!timing.is_object()) throw ExchangeParseError("timing", "expected an object");
  for (const auto& [stage, us] : timing.items()) {
    if (!us.is_number()) throw ExchangeParseError("timing", "stage '" + stage + "' is not a number");
    resp.timing.emplace_back(stage, us.get<double>());
  }
  return resp;
}

ordered_json error_document(const std::string& code, const std::string& detail) {
  ordered_json doc;
  doc["error"] = code;
  doc["detail"] = detail;
  return doc;
}

}  // namespace onebit
