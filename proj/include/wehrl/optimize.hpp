#pragma once

// Multi-start Nelder-Mead minimization of entropy functionals over pure spin
// states.

#include <cstdint>
#include <string>
#include <string_view>

#include "wehrl/coherent.hpp"
#include "wehrl/quadrature.hpp"
#include "wehrl/spin.hpp"

namespace wehrl {

enum class ObjectiveKind { kWehrl, kProjection, kAngular };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::kWehrl;
  // projection only
  SpinLabel j = SpinLabel(2);

  static Objective wehrl() { return {ObjectiveKind::kWehrl, SpinLabel(2)}; }
  static Objective projection(SpinLabel j) { return {ObjectiveKind::kProjection, j}; }
  static Objective angular() { return {ObjectiveKind::kAngular, SpinLabel(2)}; }
  // "wehrl", "angular", "projection:J" (J as "1/2", "10", "2.5")
  static Objective parse(std::string_view text);
  std::string to_string() const;
};

// Entropy of ψ for the objective; the Wehrl value uses adaptive quadrature.
double evaluate_objective(const Objective& objective, const PureState& psi);
// Objective value at a coherent state: 2l/(2l+1) for Wehrl, the coherent
// projection or angular entropy otherwise.
double coherent_benchmark(const Objective& objective, SpinLabel spin);

struct OptimizerOptions {
  // Number of independent starts (values below 1 run a single start).
  int restarts = 16;
  std::uint64_t seed = 20240601;
  // Objective evaluations per start, including simplex rebuilds.
  int max_evaluations = 20000;
  // Fixed grid used for the Wehrl objective inside the search.
  QuadratureSpec search_grid{64, 128, 1e-9};
};

struct OptimizationResult {
  PureState best_state = PureState::basis(SpinLabel(0), 0);
  double best_value = 0;
  // Nelder-Mead iterations summed over all starts.
  int iterations = 0;
  int restarts = 0;
  // The winning start met the simplex tolerance before its budget ran out.
  bool converged = false;
  int best_restart = 0;
  CoherentFit closest;
};

inline constexpr int kMaxOptimizerTwiceL = 8;

// Start r draws its initial vector from derive_seed(seed, r). Starts may run
// concurrently; the result is the lowest value, ties going to the lowest start
// index. DomainError if twice_l > kMaxOptimizerTwiceL.
OptimizationResult minimize_entropy(SpinLabel spin, const Objective& objective, const OptimizerOptions& options = {});

}  // namespace wehrl
