#pragma once

// Library side of the command-line tool. Each command returns a RunReport;
// the executable only parses flags and prints.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wehrl/quadrature.hpp"
#include "wehrl/spin.hpp"

namespace wehrl {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitCounterexample = 2, kExitResource = 3 };

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  double seconds = 0;
  int exit_code = kExitOk;
  // Tabular payload (figure rows); empty for other commands.
  std::string csv;

  nlohmann::json to_json() const;
};

// Default quadrature; WEHRL_TOL overrides the refinement tolerance.
QuadratureSpec default_quadrature();

// which: wehrl | vonneumann | projection:J | angular | renyi:N
RunReport cmd_entropy(const PureState& psi, const std::string& which, const QuadratureSpec& quad);

struct FigureOptions {
  SpinLabel spin = SpinLabel(4);
  int samples = 200;
  std::vector<SpinLabel> js = {SpinLabel(2), SpinLabel(20), SpinLabel(200)};
  std::uint64_t seed = 1;
};
inline constexpr int kMaxFigureTwiceL = 8;
inline constexpr int kMaxFigureTwiceJ = 200;

// "1,10,100" -> spin labels
std::vector<SpinLabel> parse_j_list(const std::string& text);
// One CSV row per sampled state: S_W (stellar evaluation), shifted projection entropy and gap for
// each j, and a monotone flag (gaps non-increasing in the listed j order).
RunReport cmd_figure_projection(const FigureOptions& options);

// Exit code 2 when a sampled or optimized value falls below the coherent
// benchmark by more than `tol`.
RunReport cmd_scan_conjecture(const std::string& objective, SpinLabel spin, int samples, int restarts,
                              std::uint64_t seed, double tol = 1e-8);

// mode: clone | prepare | decompose | majorize
RunReport cmd_sun(int modes, int bosons, int k, const std::string& mode, int samples, std::uint64_t seed);

}  // namespace wehrl
