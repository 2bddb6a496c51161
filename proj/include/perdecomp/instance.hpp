#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "perdecomp/abelian.hpp"
#include "perdecomp/action.hpp"
#include "perdecomp/condition.hpp"

namespace perdecomp {

enum class Mode { FiniteAction, AbelianFinite, ZWindow, TfConditions };

const char* to_string(Mode mode) noexcept;

/// One instance document. Only the fields of the active mode are populated.
struct Instance {
  Mode mode = Mode::FiniteAction;

  std::size_t size = 0;                      // finite_action
  std::vector<std::vector<Point>> perms;     // finite_action

  std::vector<std::int64_t> moduli;                   // abelian_finite
  std::vector<std::vector<std::int64_t>> translations;  // abelian_finite

  std::vector<std::int64_t> window_periods;  // z_window
  std::size_t window = 0;                    // z_window

  std::size_t dim = 0;                       // tf_conditions
  std::vector<PeriodVector> real_periods;    // tf_conditions

  FnVec f;  // all modes except tf_conditions

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Parses and schema-checks a JSON instance. Throws ParseError on malformed
/// JSON (path "$") and SchemaError naming the offending field.
Instance parse_instance(std::string_view text);

/// Reads a file and parses it; unreadable files raise ParseError(path).
Instance load_instance(const std::string& path);

/// Canonical JSON text (2-space indent, schema key order, rationals as
/// strings). parse_instance(serialize_instance(i)) == i.
std::string serialize_instance(const Instance& instance);

/// The Action of a finite_action or abelian_finite instance.
Action build_action(const Instance& instance);

WindowInstance build_window(const Instance& instance);

}  // namespace perdecomp
