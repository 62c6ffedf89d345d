// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Criteria 1 to 13 are the demo scenarios; criterion 14 drives the CLI
// binary. Exit status is 0 only when all criteria pass.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "g1lab/io.hpp"
#include "g1lab/scenarios.hpp"

#ifndef G1LAB_CLI_PATH
#error "G1LAB_CLI_PATH must name the g1lab executable"
#endif

namespace {

struct Captured {
  int status = -1;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

std::vector<g1lab::scenarios::Check> cli_determinism() {
  using g1lab::scenarios::Check;
  const std::string cli = quoted(G1LAB_CLI_PATH);
  const auto first = capture(cli + " demo all");
  const auto second = capture(cli + " demo all");
  std::vector<Check> out;
  out.push_back({"demo all exits 0", first.status == 0 && second.status == 0,
                 "exit codes " + std::to_string(first.status) + ", " + std::to_string(second.status)});
  out.push_back({"repeated demo all output is byte-identical", !first.out.empty() && first.out == second.out,
                 std::to_string(first.out.size()) + " bytes"});

  const auto g1 = capture(cli + " g1check --gen jordan --n 2 --norm 2");
  bool round_trip = false;
  try {
    const auto rep = g1lab::io::report_from_json(g1.out);
    const auto again = g1lab::io::report_to_json_value(rep);
    auto original = nlohmann::json::parse(g1.out);
    original.erase("recipe");
    round_trip = g1.status == 0 && again == original;
  } catch (const std::exception&) {
    round_trip = false;
  }
  out.push_back({"g1check report re-parses to the same JSON", round_trip, "exit code " + std::to_string(g1.status)});
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    std::string label;
    std::function<std::vector<g1lab::scenarios::Check>()> run;
  };
  std::vector<Criterion> criteria;
  for (const auto& s : g1lab::scenarios::all()) criteria.push_back({s.name, s.run});
  criteria.push_back({"cli-determinism", cli_determinism});

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = criteria[k].run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = !checks.empty();
    std::string detail;
    for (const auto& c : checks) {
      pass = pass && c.pass;
      if (!detail.empty()) detail += "; ";
      detail += (c.pass ? "" : "FAILED ") + c.name + ": " + c.detail;
    }
    if (!pass) ++failed;
    char head[96];
    std::snprintf(head, sizeof head, "%s criterion %2zu %-18s (%5.2fs) ", pass ? "PASS" : "FAIL", k + 1,
                  criteria[k].label.c_str(), secs);
    std::cout << head << detail << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
