#include <initializer_list>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fourflow/errors.hpp"
#include "fourflow/runner.hpp"
#include "fourflow/scenario.hpp"

namespace {

// Exit codes: 0 success, 1 validation failure, 2 runtime/domain failure,
// 3 I/O failure.
int run_file(const std::string& path, std::initializer_list<fourflow::RunMode> allowed,
             const char* subcommand) {
  try {
    const fourflow::ScenarioParseResult parsed = fourflow::parse_scenario_file(path);
    if (!parsed.ok()) {
      for (const std::string& e : parsed.errors) std::cerr << "error: " << e << '\n';
      return 1;
    }
    const fourflow::Scenario& sc = *parsed.scenario;
    bool mode_ok = false;
    for (const fourflow::RunMode m : allowed) mode_ok = mode_ok || m == sc.mode;
    if (!mode_ok) {
      std::cerr << "error: scenario mode '" << fourflow::to_string(sc.mode)
                << "' does not match subcommand '" << subcommand << "'\n";
      return 1;
    }
    const fourflow::RunReport report = fourflow::run_scenario(sc);
    std::cout << fourflow::format_report(report);
    return 0;
  } catch (const fourflow::IoError& err) {
    std::cerr << "io error: " << err.what() << '\n';
    return 3;
  } catch (const fourflow::ValidationError& err) {
    for (const std::string& issue : err.issues()) std::cerr << "error: " << issue << '\n';
    return 1;
  } catch (const fourflow::Error& err) {
    std::cerr << "runtime error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "runtime error: " << err.what() << '\n';
    return 2;
  }
}

int list_models() {
  std::cout <<
      "models:\n"
      "  free_nonrel        H = |p|^2/(2m) + V(r,t)                       [potential] optional\n"
      "  relativistic       H = c sqrt(m^2 c^2 + |p|^2) + V(r,t)          [potential] optional\n"
      "  charged_canonical  H = c sqrt(m^2 c^2 + |p - (e/c)A|^2) + e Phi  [field] required\n"
      "  optics_ray         H = c |p| / n(r)                              [index] required\n"
      "potentials:\n"
      "  none | uniform(v0) | linear(g) | harmonic(k, center) | driven_linear(f, omega)\n"
      "fields:\n"
      "  uniform_E(E) | uniform_B(B) | crossed(E, B) | ramp_E(E0)\n"
      "index fields:\n"
      "  uniform(n0) | linear_gradient(n0, alpha)\n"
      "modes:\n"
      "  canonical4d | gauge4d | reference3d | compare | quantum\n"
      "defaults: m = 1, e = 1, c = 1, hbar = 1\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extended-phase-space Hamiltonian dynamics engine"};
  app.require_subcommand(1);

  std::string sim_path, cmp_path, qm_path;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Run a trajectory scenario (canonical4d, gauge4d or reference3d)");
  sim->add_option("scenario", sim_path, "scenario file path")->required();
  CLI::App* cmp = app.add_subcommand("compare", "Run a 4d-vs-3d comparison scenario");
  cmp->add_option("scenario", cmp_path, "scenario file path")->required();
  CLI::App* qm = app.add_subcommand("quantum", "Run a wave-packet evolution scenario");
  qm->add_option("scenario", qm_path, "scenario file path")->required();
  CLI::App* lst = app.add_subcommand("list-models", "Print the built-in model catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  using fourflow::RunMode;
  if (sim->parsed())
    return run_file(sim_path, {RunMode::canonical4d, RunMode::gauge4d, RunMode::reference3d},
                    "simulate");
  if (cmp->parsed()) return run_file(cmp_path, {RunMode::compare}, "compare");
  if (qm->parsed()) return run_file(qm_path, {RunMode::quantum}, "quantum");
  if (lst->parsed()) return list_models();
  return 1;
}
