#include "wehrl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "wehrl/channels.hpp"
#include "wehrl/entropy.hpp"
#include "wehrl/errors.hpp"
#include "wehrl/kernels.hpp"
#include "wehrl/sampling.hpp"

namespace wehrl {

Objective Objective::parse(std::string_view text) {
  if (text == "wehrl") return wehrl();
  if (text == "angular") return angular();
  constexpr std::string_view prefix = "projection:";
  if (text.substr(0, prefix.size()) == prefix) return projection(SpinLabel::parse(text.substr(prefix.size())));
  throw DomainError("unknown objective '" + std::string(text) + "' (expected wehrl, angular or projection:J)");
}

std::string Objective::to_string() const {
  switch (kind) {
    case ObjectiveKind::kWehrl:
      return "wehrl";
    case ObjectiveKind::kAngular:
      return "angular";
    case ObjectiveKind::kProjection:
      return "projection:" + j.to_string();
  }
  return "?";
}

double evaluate_objective(const Objective& objective, const PureState& psi) {
  switch (objective.kind) {
    case ObjectiveKind::kWehrl:
      return wehrl_entropy(psi);
    case ObjectiveKind::kProjection:
      return projection_entropy(psi, objective.j);
    case ObjectiveKind::kAngular:
      return angular_entropy(psi);
  }
  throw DomainError("unknown objective");
}

double coherent_benchmark(const Objective& objective, SpinLabel spin) {
  switch (objective.kind) {
    case ObjectiveKind::kWehrl:
      return coherent_wehrl(spin);
    case ObjectiveKind::kProjection:
      return projection_entropy(coherent_state(spin, SphereDirection::north()), objective.j);
    case ObjectiveKind::kAngular: {
      std::vector<double> t = coherent_angular_tuple(spin);
      for (double& v : t) v /= spin.casimir();
      return shannon_entropy(SpectrumVector(t));
    }
  }
  throw DomainError("unknown objective");
}

namespace {

using Point = Eigen::VectorXd;

CVector to_amplitudes(const Point& x) {
  const Eigen::Index d = x.size() / 2;
  CVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = cplx(x(2 * i), x(2 * i + 1));
  return v;
}

Point to_point(const CVector& v) {
  Point x(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    x(2 * i) = v(i).real();
    x(2 * i + 1) = v(i).imag();
  }
  return x;
}

class SearchObjective {
 public:
  SearchObjective(SpinLabel spin, const Objective& objective, const QuadratureSpec& grid)
      : spin_(spin), objective_(objective) {
    if (objective.kind == ObjectiveKind::kWehrl) {
      QuadratureSpec g = grid;
      g.n_phi = std::max(g.n_phi, 2 * spin.twice() + 1);
      grid_ = SphereGrid::build(g);
    }
  }

  double operator()(const Point& x) const {
    const PureState psi = PureState::normalized(spin_, to_amplitudes(x));
    if (objective_.kind == ObjectiveKind::kWehrl)
      return spin_.dim() * sphere_average(HusimiFactors::from(psi), grid_, Integrand::entropy());
    return evaluate_objective(objective_, psi);
  }

 private:
  SpinLabel spin_;
  Objective objective_;
  SphereGrid grid_;
};

struct NelderMeadRun {
  Point best;
  double value;
  int iterations;
  int evaluations;
  bool converged;
};

// Adaptive-coefficient Nelder-Mead. Vertices are rescaled to unit norm after
// every step (the objective only depends on the ray).
NelderMeadRun nelder_mead(const SearchObjective& f, Point start, double step, int budget) {
  const int n = static_cast<int>(start.size());
  const double alpha = 1.0, beta = 1.0 + 2.0 / n, gamma = 0.75 - 0.5 / n, delta = 1.0 - 1.0 / n;
  std::vector<Point> xs(n + 1, start);
  for (int i = 0; i < n; ++i) xs[i + 1](i) += step;
  for (Point& x : xs) x.normalize();
  std::vector<double> fs(n + 1);
  int evals = 0;
  for (int i = 0; i <= n; ++i) fs[i] = f(xs[i]);
  evals += n + 1;
  std::vector<int> order(n + 1);
  int iter = 0;
  bool converged = false;
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int lo = order.front(), hi = order.back(), second = order[n - 1];
    if (fs[hi] - fs[lo] <= 1e-13) {
      converged = true;
      break;
    }
    ++iter;
    Point centroid = Point::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != hi) centroid += xs[i];
    centroid /= n;
    auto eval = [&](Point p) {
      p.normalize();
      ++evals;
      return std::make_pair(p, f(p));
    };
    auto [xr, fr] = eval(centroid + alpha * (centroid - xs[hi]));
    if (fr < fs[lo]) {
      auto [xe, fe] = eval(centroid + beta * (xr - centroid));
      if (fe < fr) {
        xs[hi] = xe;
        fs[hi] = fe;
      } else {
        xs[hi] = xr;
        fs[hi] = fr;
      }
    } else if (fr < fs[second]) {
      xs[hi] = xr;
      fs[hi] = fr;
    } else {
      const bool outside = fr < fs[hi];
      auto [xc, fc] = outside ? eval(centroid + gamma * (xr - centroid)) : eval(centroid - gamma * (centroid - xs[hi]));
      if (fc < std::min(fr, fs[hi])) {
        xs[hi] = xc;
        fs[hi] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == lo) continue;
          auto [xk, fk] = eval(xs[lo] + delta * (xs[i] - xs[lo]));
          xs[i] = xk;
          fs[i] = fk;
        }
      }
    }
  }
  const int best = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  return {xs[best], fs[best], iter, evals, converged};
}

struct StartResult {
  Point best;
  double value;
  int iterations;
  bool converged;
};

StartResult run_start(const SearchObjective& f, int dim, std::uint64_t seed, int budget) {
  Rng rng(seed);
  Point x = to_point(haar_vector(dim, rng));
  double value = f(x);
  int used = 1, iterations = 0;
  bool converged = false;
  double step = 0.3;
  // Rebuild the simplex around the incumbent until a rebuild stops helping.
  while (used < budget) {
    const NelderMeadRun run = nelder_mead(f, x, step, budget - used);
    used += run.evaluations;
    iterations += run.iterations;
    const double gain = value - run.value;
    if (run.value < value) {
      x = run.best;
      value = run.value;
    }
    converged = run.converged;
    if (run.converged && gain < 1e-12 && step <= 0.05) break;
    step = std::max(0.5 * step, 0.01);
  }
  return {x, value, iterations, converged};
}

}  // namespace

OptimizationResult minimize_entropy(SpinLabel spin, const Objective& objective, const OptimizerOptions& options) {
  if (spin.twice() > kMaxOptimizerTwiceL)
    throw DomainError("optimizer is limited to twice_l <= " + std::to_string(kMaxOptimizerTwiceL));
  if (objective.kind == ObjectiveKind::kAngular && spin.twice() < 1)
    throw DomainError("angular objective needs l >= 1/2");
  const int starts = std::max(1, options.restarts);
  const SearchObjective f(spin, objective, options.search_grid);
  std::vector<StartResult> results(starts);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < starts; ++r)
    results[r] = run_start(f, spin.dim(), derive_seed(options.seed, r), options.max_evaluations);

  int best = 0;
  OptimizationResult out;
  out.restarts = starts;
  for (int r = 0; r < starts; ++r) {
    out.iterations += results[r].iterations;
    if (results[r].value < results[best].value) best = r;
  }
  out.best_restart = best;
  out.converged = results[best].converged;
  out.best_state = PureState::normalized(spin, to_amplitudes(results[best].best));
  out.best_value = evaluate_objective(objective, out.best_state);
  out.closest = closest_coherent(out.best_state);
  return out;
}

}  // namespace wehrl
