#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "perdecomp/abelian.hpp"
#include "perdecomp/condition.hpp"
#include "perdecomp/error.hpp"

namespace perdecomp {

enum class Verdict { Decomposable, NotDecomposable, ConditionsOnly, Error, InternalError };

const char* to_string(Verdict verdict) noexcept;

/// 0 decomposable / conditions_only, 1 not_decomposable, 2 error,
/// 3 internal_error.
int exit_code(Verdict verdict) noexcept;

struct Report {
  Verdict verdict = Verdict::ConditionsOnly;
  std::optional<std::vector<FnVec>> parts;
  std::optional<nlohmann::ordered_json> certificate;
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  /// Two-space indented JSON followed by a newline.
  std::string dump() const;
};

nlohmann::ordered_json rational_json(const Rational& q);
nlohmann::ordered_json values_json(const FnVec& values);
/// Blocks with 1-based generator indices.
nlohmann::ordered_json partition_json(const SetPartition& partition);
nlohmann::ordered_json certificate_json(const ViolationCertificate& cert);
nlohmann::ordered_json window_certificate_json(const WindowInstance& instance,
                                               const WindowViolation& violation);

/// Report for a caught library error: verdict error, or internal_error for
/// InternalInvariantFailure.
Report error_report(const Error& error);

}  // namespace perdecomp
