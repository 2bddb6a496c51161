#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "perdecomp/fuzz.hpp"
#include "perdecomp/instance.hpp"
#include "perdecomp/kernels.hpp"
#include "perdecomp/run.hpp"

using namespace perdecomp;

namespace {

int emit(const Report& report) {
  std::cout << report.dump();
  return exit_code(report.verdict);
}

int run_file(Command command, const std::string& path, const RunOptions& options) {
  Instance instance;
  try {
    instance = load_instance(path);
  } catch (const Error& e) {
    return emit(error_report(e));
  }
  return emit(run(command, instance, options));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic decomposition of functions under commuting permutations"};
  app.require_subcommand(1);
  std::string kernels = "auto";
  app.add_option("--kernels", kernels, "Kernel backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  std::string file;
  RunOptions options;
  std::string ring = "rational";

  auto* validate = app.add_subcommand("validate", "Validate an instance file");
  validate->add_option("FILE", file)->required();

  auto* check = app.add_subcommand("check", "Check the difference condition");
  check->add_option("FILE", file)->required();
  check->add_flag("--exhaustive", options.exhaustive, "Use every element of each block group");

  auto* decompose = app.add_subcommand("decompose", "Decompose into periodic parts");
  decompose->add_option("FILE", file)->required();
  auto* constructive = decompose->add_flag("--constructive", "Use the constructive recursion");
  auto* oracle_flag = decompose->add_flag("--oracle", "Use the linear oracle");
  constructive->excludes(oracle_flag);
  decompose->add_option("--ring", ring)->check(CLI::IsMember({"rational", "integer"}));

  auto* oracle = app.add_subcommand("oracle", "Solve the linear feasibility problem");
  oracle->add_option("FILE", file)->required();
  oracle->add_option("--ring", ring)->check(CLI::IsMember({"rational", "integer"}));

  auto* conditions = app.add_subcommand("conditions", "List the nontrivial conditions");
  conditions->add_option("FILE", file)->required();

  for (auto* sub : {validate, check, decompose, oracle, conditions})
    sub->add_flag("--timings", options.timings, "Add elapsed time to diagnostics");

  FuzzOptions fuzz_options;
  std::string fault = "none";
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Randomized cross-validation sweep");
  fuzz_cmd->add_option("--seed", fuzz_options.seed)->required();
  fuzz_cmd->add_option("--count", fuzz_options.count)->required()->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--max-carrier", fuzz_options.max_carrier)->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--max-gens", fuzz_options.max_gens)->check(CLI::Range(1, 8));
  fuzz_cmd->add_option("--inject-fault", fault)
      ->check(CLI::IsMember({"none", "drop-last-operator"}));

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "Built-in worked example");
  demo->add_option("NAME", demo_name)->required()->check(CLI::IsMember({"z2z2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  kernels::select_backend(kernels == "scalar" ? kernels::Backend::Scalar
                          : kernels == "avx2" ? kernels::Backend::Avx2
                                              : kernels::Backend::Auto);

  options.ring = ring == "integer" ? Ring::Integer : Ring::Rational;
  if (constructive->count() > 0) options.method = Method::Constructive;
  if (oracle_flag->count() > 0) options.method = Method::Oracle;

  if (*validate) return run_file(Command::Validate, file, options);
  if (*check) return run_file(Command::Check, file, options);
  if (*decompose) return run_file(Command::Decompose, file, options);
  if (*oracle) return run_file(Command::Oracle, file, options);
  if (*conditions) return run_file(Command::Conditions, file, options);
  if (*fuzz_cmd) {
    fuzz_options.fault = fault == "drop-last-operator" ? Fault::DropLastOperator : Fault::None;
    return emit(fuzz(fuzz_options));
  }
  if (*demo) return emit(demo_z2z2());
  return 2;
}
