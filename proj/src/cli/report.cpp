#include "perdecomp/report.hpp"

namespace perdecomp {

using Json = nlohmann::ordered_json;

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Decomposable: return "decomposable";
    case Verdict::NotDecomposable: return "not_decomposable";
    case Verdict::ConditionsOnly: return "conditions_only";
    case Verdict::Error: return "error";
    case Verdict::InternalError: return "internal_error";
  }
  return "?";
}

int exit_code(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Decomposable:
    case Verdict::ConditionsOnly: return 0;
    case Verdict::NotDecomposable: return 1;
    case Verdict::Error: return 2;
    case Verdict::InternalError: return 3;
  }
  return 3;
}

Json Report::to_json() const {
  Json doc;
  doc["verdict"] = to_string(verdict);
  if (parts) {
    Json arr = Json::array();
    for (const auto& p : *parts) arr.push_back(values_json(p));
    doc["parts"] = std::move(arr);
  } else {
    doc["parts"] = nullptr;
  }
  doc["certificate"] = certificate ? *certificate : Json(nullptr);
  doc["diagnostics"] = diagnostics;
  return doc;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

Json rational_json(const Rational& q) { return q.to_string(); }

Json values_json(const FnVec& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.to_string());
  return arr;
}

Json partition_json(const SetPartition& partition) {
  Json arr = Json::array();
  for (const auto& block : partition.blocks) {
    Json b = Json::array();
    for (std::size_t j : block) b.push_back(j + 1);
    arr.push_back(std::move(b));
  }
  return arr;
}

Json certificate_json(const ViolationCertificate& cert) {
  Json doc;
  doc["kind"] = "condition";
  doc["orbit"] = cert.orbit;
  doc["partition"] = partition_json(cert.partition);
  Json chosen = Json::array();
  for (const auto& s : cert.chosen) chosen.push_back(s.word);
  doc["chosen"] = std::move(chosen);
  doc["witness"] = cert.witness;
  doc["value"] = cert.value.to_string();
  return doc;
}

Json window_certificate_json(const WindowInstance& instance, const WindowViolation& violation) {
  Json doc;
  doc["kind"] = "window_condition";
  doc["orbit"] = 0;
  doc["partition"] = partition_json(violation.partition);
  Json chosen = Json::array();
  for (std::size_t b = 0; b < violation.partition.blocks.size(); ++b) {
    const std::size_t lead = violation.partition.blocks[b].front();
    std::vector<std::int64_t> word(instance.periods.size(), 0);
    word[lead] = violation.shifts[b] / instance.periods[lead];
    chosen.push_back(std::move(word));
  }
  doc["chosen"] = std::move(chosen);
  doc["shifts"] = violation.shifts;
  doc["witness"] = violation.witness;
  doc["value"] = violation.value.to_string();
  return doc;
}

Report error_report(const Error& error) {
  Report r;
  r.verdict = error.kind() == ErrorKind::InternalInvariantFailure ? Verdict::InternalError
                                                                  : Verdict::Error;
  r.diagnostics["error"] = to_string(error.kind());
  r.diagnostics["message"] = error.what();
  return r;
}

}  // namespace perdecomp
