#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wehrl/coherent.hpp"
#include "wehrl/commands.hpp"
#include "wehrl/errors.hpp"
#include "wehrl/state_io.hpp"

using namespace wehrl;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

std::string results_csv(const RunReport& rep) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : rep.results.items()) out += key + "," + value.dump() + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state entropies and covariant channels for SU(2) and symmetric SU(N)"};
  app.require_subcommand(1);

  std::string state_path, which = "wehrl", format = "json", out_path, report_path;
  bool normalize = false;
  double tol = -1;
  auto* entropy = app.add_subcommand("entropy", "Entropy of a pure state read from a JSON or CSV file");
  entropy->add_option("--state", state_path, "State file (.json or .csv)")->required();
  entropy->add_option("--which", which, "wehrl | vonneumann | projection:J | angular | renyi:N");
  entropy->add_flag("--normalize", normalize, "Rescale the amplitudes to unit norm");
  entropy->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  entropy->add_option("--tol", tol, "Quadrature refinement tolerance (default 1e-9 or WEHRL_TOL)");
  entropy->add_option("--out", out_path, "Output file (default stdout)");

  std::string l_text = "2", j_text = "1,10,100";
  int samples = 200, restarts = 16;
  std::uint64_t seed = 1;
  auto* figure = app.add_subcommand("figure-projection", "Wehrl vs shifted projection entropies on random states");
  figure->add_option("--l", l_text, "Spin l (e.g. 2, 3/2)");
  figure->add_option("--samples", samples, "Number of Haar-random states");
  figure->add_option("--j", j_text, "Comma-separated j values");
  figure->add_option("--seed", seed, "Master seed");
  figure->add_option("--out", out_path, "CSV output (default stdout)");
  figure->add_option("--report", report_path, "JSON run report");

  std::string objective = "wehrl";
  auto* scan = app.add_subcommand("scan-conjecture", "Search for states below the coherent-state benchmark");
  scan->add_option("--objective", objective, "wehrl | projection:J | angular");
  scan->add_option("--l", l_text, "Spin l");
  scan->add_option("--samples", samples, "Random samples");
  scan->add_option("--restarts", restarts, "Optimizer starts");
  scan->add_option("--seed", seed, "Master seed");
  scan->add_option("--out", out_path, "JSON output (default stdout)");

  int modes = 2, bosons = 1, clones = 1;
  std::string mode = "clone";
  auto* sun = app.add_subcommand("sun", "Symmetric SU(N) cloning and measure-and-prepare channels");
  sun->add_option("--N", modes, "Number of modes");
  sun->add_option("--M", bosons, "Input boson number");
  sun->add_option("--k", clones, "Added bosons");
  sun->add_option("--mode", mode, "clone | prepare | decompose | majorize")
      ->check(CLI::IsMember({"clone", "prepare", "decompose", "majorize"}));
  sun->add_option("--samples", samples, "Samples (majorize) or batch size (decompose)");
  sun->add_option("--seed", seed, "Master seed");
  sun->add_option("--out", out_path, "JSON output (default stdout)");

  double theta = 0, phi = 0;
  auto* coherent = app.add_subcommand("coherent", "Write the spin coherent state at (theta, phi) as a state file");
  coherent->add_option("--l", l_text, "Spin l");
  coherent->add_option("--theta", theta, "Polar angle");
  coherent->add_option("--phi", phi, "Azimuth");
  coherent->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  coherent->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunReport rep;
    if (*entropy) {
      QuadratureSpec quad = default_quadrature();
      if (tol > 0) quad.tol = tol;
      const PureState psi = load_state(state_path, normalize);
      rep = cmd_entropy(psi, which, quad);
      emit(format == "csv" ? results_csv(rep) : rep.to_json().dump(2) + "\n", out_path);
    } else if (*figure) {
      FigureOptions opt;
      opt.spin = SpinLabel::parse(l_text);
      opt.samples = samples;
      opt.js = parse_j_list(j_text);
      opt.seed = seed;
      rep = cmd_figure_projection(opt);
      emit(rep.csv, out_path);
      if (!report_path.empty()) emit(rep.to_json().dump(2) + "\n", report_path);
    } else if (*scan) {
      rep = cmd_scan_conjecture(objective, SpinLabel::parse(l_text), samples, restarts, seed);
      emit(rep.to_json().dump(2) + "\n", out_path);
    } else if (*sun) {
      rep = cmd_sun(modes, bosons, clones, mode, samples, seed);
      emit(rep.to_json().dump(2) + "\n", out_path);
    } else if (*coherent) {
      const PureState psi = coherent_state(SpinLabel::parse(l_text), SphereDirection::normalized(theta, phi));
      emit(format == "csv" ? format_state_csv(psi) : format_state_json(psi), out_path);
    }
    return rep.exit_code;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
