// Command-line front end: block decompositions and scenario verification.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "gmorita/error.hpp"
#include "gmorita/scenario.hpp"

using namespace gmorita;

namespace {

constexpr int kExitParse = 2;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit(const Json& report, const std::string& out) {
  std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f)
    throw ParseError("cannot write " + out);
  f << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blocks, crossed products and graded Morita equivalences over prime fields"};
  app.require_subcommand(1);

  std::string group_path, out;
  unsigned prime = 2;
  bool oracle = false;
  auto* blocks = app.add_subcommand("blocks", "Block decomposition of a group algebra");
  blocks->add_option("group", group_path, "Group spec (JSON)")->required();
  blocks->add_option("--p", prime, "Characteristic")->required();
  blocks->add_flag("--oracle", oracle, "Cross-check against exhaustive enumeration");
  blocks->add_option("--out", out, "Write the report here instead of stdout");

  std::string scenario_path, check;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Run checks on a scenario");
  verify->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
  verify->add_option("--check", check, "Check to run; default is the scenario pipeline")
      ->check(CLI::IsMember(check_names()));
  verify->add_flag("--oracle", oracle, "Cross-check against brute-force oracles where feasible");
  verify->add_option("--out", out, "Write the report here instead of stdout");
  verify->add_option("--seed", seed, "Seed for randomized isomorphism searches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*blocks) {
      FiniteGroup G;
      PrimeField F(2);
      try {
        G = parse_group(read_json(group_path));
        F = PrimeField(prime);
      } catch (const Error& e) {
        throw ParseError(e.what());
      }
      Json report = blocks_report(G, F, oracle);
      emit(report, out);
      bool ok = report["decomposition_ok"].get<bool>() && report["sum_is_one"].get<bool>() &&
                (!report.contains("oracle") || report["oracle"] != Json(false));
      return ok ? 0 : 1;
    }
    Scenario s = load_scenario_file(scenario_path);
    std::vector<std::string> checks;
    if (!check.empty())
      checks.push_back(check);
    auto [code, report] = verify_scenario(s, checks, RunOptions{seed, oracle});
    emit(report, out);
    return code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Inconsistent ? 3 : 1;
  }
}
