#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tritcert/error.hpp"
#include "tritcert/json_io.hpp"
#include "tritcert/suites.hpp"

using namespace tritcert;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kCapacity = 3, kContract = 4 };

void emit(const Json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

void print_suite(const SuiteReport& report, bool pretty) {
  if (!pretty) {
    emit(report.to_json(), false);
    return;
  }
  for (const auto& r : report.records) {
    std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.id << "  observed " << r.observed.dump() << "  expected "
              << r.expected.dump() << "\n";
  }
  std::cout << report.suite << ": " << (report.pass() ? "pass" : "FAIL") << " (" << report.records.size()
            << " records, seed " << report.options.seed << ")\n";
}

int run_verify(const SuiteOptions& options, const std::string& out, bool pretty) {
  const auto start = std::chrono::steady_clock::now();
  const SuiteReport report = run_suite(options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  print_suite(report, pretty);
  std::string path = out;
  if (path.empty()) {
    if (const char* dir = std::getenv("TRITCERT_REPORT_DIR"); dir && *dir) {
      path = std::string(dir) + "/verify-" + options.suite + ".json";
    }
  }
  if (!path.empty()) write_text_file(path, report.to_json().dump(2) + "\n");
  std::cerr << "wall time " << seconds << " s\n";
  return report.pass() ? kPass : kFail;
}

int run_reduce(const std::string& in, const std::vector<std::string>& chain, const std::string& out,
               std::optional<std::string> c, std::optional<std::string> s, bool pretty) {
  std::vector<std::string> stages;
  for (const auto& item : chain) {
    std::size_t begin = 0;
    while (begin <= item.size()) {
      const auto comma = item.find(',', begin);
      const auto part = item.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
      if (!part.empty()) stages.push_back(part);
      if (comma == std::string::npos) break;
      begin = comma + 1;
    }
  }
  std::optional<DecisionThresholds> thresholds;
  if (c || s) {
    if (!c || !s) throw ParseError("--c and --s go together");
    thresholds = DecisionThresholds(parse_rational(*c), parse_rational(*s));
  }
  const auto result = run_reduction(read_json_file(in), stages, thresholds);
  write_text_file(out, result.instance.dump() + "\n");
  emit(result.report, pretty);
  return kPass;
}

int run_demo_decode(const std::string& in, const std::string& tables_path, std::uint64_t seed, bool pretty) {
  const auto lc = labelcover_from_json(read_json_file(in));
  const auto tables = tables_from_json(read_json_file(tables_path));
  if (tables.f.size() != lc.left().size() || tables.g.size() != lc.right().size()) {
    throw ShapeError("tables file needs one table per vertex");
  }
  for (const auto& f : tables.f) {
    if (f.arity() != lc.K()) throw ShapeError("left tables must have arity K");
  }
  for (const auto& g : tables.g) {
    if (g.arity() != lc.K() * lc.d()) throw ShapeError("right tables must have arity dK");
  }
  std::mt19937_64 rng(seed);
  const double expected = expected_decoded_value(lc, tables);
  const Labeling sample = sample_labeling(lc, tables, rng);
  emit({{"seed", seed},
        {"expected_value", expected},
        {"sample_labeling", labeling_to_json(sample)},
        {"sample_value", to_string(labeling_value(lc, sample))}},
       pretty);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for Z_3 CSP gadgets, dictatorship tests and Long-Code reductions"};
  app.require_subcommand(1);

  SuiteOptions options;
  std::string out, in, tables;
  std::vector<std::string> chain;
  std::optional<std::string> c_flag, s_flag;
  bool pretty = false;
  std::uint64_t seed = 1;

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", options.suite, "Suite name")->check(CLI::IsMember(suite_names()));
  verify->add_option("--K", options.K, "Blocks K")->check(CLI::PositiveNumber);
  verify->add_option("--d", options.d, "Block width d")->check(CLI::PositiveNumber);
  verify->add_option("--trials", options.trials, "Random trials per property")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", options.seed, "PRNG seed");
  verify->add_option("--tolerance", options.tolerance, "Numeric tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--out", out, "Also write the report here");
  verify->add_flag("--pretty", pretty, "Human-readable output");

  auto* reduce = app.add_subcommand("reduce", "Apply a reduction chain to an instance");
  reduce->add_option("--in", in, "Input instance (csp or label cover JSON)")->required();
  reduce->add_option("--chain", chain, "Stages, repeated or comma-separated")->required();
  reduce->add_option("--out", out, "Output instance path")->required();
  reduce->add_option("--c", c_flag, "Completeness threshold of the first gadget input");
  reduce->add_option("--s", s_flag, "Soundness threshold of the first gadget input");
  reduce->add_flag("--pretty", pretty, "Indented output");

  auto* demo = app.add_subcommand("demo-decode", "Decode Long-Code tables into a labeling");
  demo->add_option("--in", in, "Label cover instance")->required();
  demo->add_option("--tables", tables, "Long-Code tables")->required();
  demo->add_option("--seed", seed, "PRNG seed");
  demo->add_flag("--pretty", pretty, "Indented output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) return run_verify(options, out, pretty);
    if (*reduce) return run_reduce(in, chain, out, c_flag, s_flag, pretty);
    return run_demo_decode(in, tables, seed, pretty);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const ContractError& e) {
    std::cerr << "contract: " << e.what() << "\n";
    return kContract;
  } catch (const ShapeError& e) {
    std::cerr << "shape: " << e.what() << "\n";
    return kContract;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
