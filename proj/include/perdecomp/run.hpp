#pragma once

#include <optional>
#include <string_view>

#include "perdecomp/decompose.hpp"
#include "perdecomp/instance.hpp"
#include "perdecomp/report.hpp"

namespace perdecomp {

enum class Command { Validate, Check, Decompose, Oracle, Conditions };

std::optional<Command> parse_command(std::string_view name);

enum class Method { Default, Constructive, Oracle };

struct RunOptions {
  bool exhaustive = false;  ///< check: every element of each [B_j]
  Method method = Method::Default;
  Ring ring = Ring::Rational;
  bool timings = false;  ///< adds wall-clock timings (breaks byte-identical output)
};

/// Executes one command. Library errors become error / internal_error
/// reports; this function does not throw.
Report run(Command command, const Instance& instance, const RunOptions& options = {});

/// The four-point counterexample: condition check, rational decomposition,
/// verification of the half-valued triple, and the integer refutation.
Report demo_z2z2();

/// The built-in z2z2 instance (also shipped as a fixture).
Instance z2z2_instance();

}  // namespace perdecomp
