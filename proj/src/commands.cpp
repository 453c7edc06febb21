#include "wehrl/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "wehrl/channels.hpp"
#include "wehrl/entropy.hpp"
#include "wehrl/errors.hpp"
#include "wehrl/fock.hpp"
#include "wehrl/optimize.hpp"
#include "wehrl/sampling.hpp"
#include "wehrl/state_io.hpp"

namespace wehrl {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json to_json(const SpectrumVector& s) { return json(s.values()); }

}  // namespace

json RunReport::to_json() const {
  return json{{"command", command}, {"seed", seed},          {"tolerances", tolerances},
              {"results", results}, {"exit_code", exit_code}, {"timing_seconds", seconds}};
}

QuadratureSpec default_quadrature() {
  QuadratureSpec q;
  if (const char* env = std::getenv("WEHRL_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(tol > 0)) throw DomainError(std::string("invalid WEHRL_TOL '") + env + "'");
    q.tol = tol;
  }
  return q;
}

RunReport cmd_entropy(const PureState& psi, const std::string& which, const QuadratureSpec& quad) {
  const auto start = Clock::now();
  RunReport rep;
  rep.command = "entropy " + which;
  rep.tolerances = {{"quadrature_tol", quad.tol}};
  const SpinLabel l = psi.spin();
  json& r = rep.results;
  r["which"] = which;
  r["twice_l"] = l.twice();

  if (which == "wehrl") {
    const WehrlResult w = wehrl_adaptive(psi, quad);
    r["value"] = w.value;
    r["coherent_benchmark"] = coherent_wehrl(l);
    r["n_theta"] = w.grid.n_theta;
    r["n_phi"] = w.grid.n_phi;
    r["last_change"] = w.last_change;
  } else if (which == "vonneumann") {
    r["value"] = von_neumann(DensityMatrix::pure(psi));
  } else if (which == "angular") {
    r["value"] = angular_entropy(psi);
    r["spectrum"] = to_json(SpectrumVector::of(angular_gram(psi)));
  } else if (which.rfind("projection:", 0) == 0) {
    const SpinLabel j = SpinLabel::parse(which.substr(11));
    if (j.twice() > kMaxFigureTwiceJ)
      throw ResourceError("projection entropy is limited to j <= " + std::to_string(kMaxFigureTwiceJ / 2));
    const double s = projection_entropy(psi, j);
    r["j"] = j.to_string();
    r["value"] = s;
    r["shift"] = projection_shift(l, j);
    r["shifted_value"] = s + projection_shift(l, j);
    r["upper_bound"] = std::log(j.twice() + 1.0);
  } else if (which.rfind("renyi:", 0) == 0) {
    const std::string order = which.substr(6);
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(order, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != order.size() || n < 2) throw DomainError("Rényi order must be an integer >= 2");
    const DensityMatrix rho = DensityMatrix::pure(psi);
    const double moment = renyi_wehrl_moment(rho, n, QuadratureSpec::exact_for(2 * n * l.twice()));
    r["order"] = n;
    r["moment"] = moment;
    r["value"] = renyi_wehrl_entropy(moment, n);
    r["coherent_moment"] = coherent_renyi_moment(l, n);
    try {
      r["projector_moment"] = renyi_wehrl_projector(rho, n);
    } catch (const ResourceError&) {
      r["projector_moment"] = nullptr;
    }
  } else {
    throw DomainError("unknown entropy '" + which + "' (wehrl, vonneumann, projection:J, angular, renyi:N)");
  }
  rep.seconds = seconds_since(start);
  return rep;
}

std::vector<SpinLabel> parse_j_list(const std::string& text) {
  std::vector<SpinLabel> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty()) throw DomainError("empty entry in j list '" + text + "'");
    out.push_back(SpinLabel::parse(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

RunReport cmd_figure_projection(const FigureOptions& options) {
  const auto start = Clock::now();
  const SpinLabel l = options.spin;
  if (l.twice() > kMaxFigureTwiceL)
    throw ResourceError("figure data is limited to twice_l <= " + std::to_string(kMaxFigureTwiceL));
  if (options.samples < 1) throw DomainError("sample count must be positive");
  std::vector<SpinLabel> js = options.js;
  if (js.empty()) throw DomainError("j list is empty");
  std::sort(js.begin(), js.end(), [](SpinLabel a, SpinLabel b) { return a.twice() < b.twice(); });
  for (SpinLabel j : js)
    if (j.twice() > kMaxFigureTwiceJ)
      throw ResourceError("figure data is limited to j <= " + std::to_string(kMaxFigureTwiceJ / 2));

  const std::vector<PureState> states = haar_states(l, options.samples, options.seed);
  constexpr double kGapSlack = 1e-10;

  std::string csv = "index,wehrl";
  for (SpinLabel j : js) csv += ",shifted_j" + j.to_string() + ",gap_j" + j.to_string();
  csv += ",monotone\n";

  int shift_violations = 0, monotone_violations = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < options.samples; ++i) {
    const double sw = wehrl_stellar(states[i]);
    csv += std::to_string(i) + "," + format_double(sw);
    double prev_gap = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (SpinLabel j : js) {
      const double shifted = projection_entropy(states[i], j) + projection_shift(l, j);
      const double gap = sw - shifted;
      csv += "," + format_double(shifted) + "," + format_double(gap);
      if (gap < -kGapSlack) ++shift_violations;
      if (gap > prev_gap + kGapSlack) monotone = false;
      prev_gap = gap;
      min_gap = std::min(min_gap, gap);
    }
    if (!monotone) ++monotone_violations;
    csv += monotone ? ",1\n" : ",0\n";
  }

  RunReport rep;
  rep.command = "figure-projection";
  rep.seed = options.seed;
  rep.tolerances = {{"wehrl_method", "stellar"}, {"gap_slack", kGapSlack}};
  json jl = json::array();
  for (SpinLabel j : js) jl.push_back(j.to_string());
  rep.results = {{"twice_l", l.twice()},
                 {"samples", options.samples},
                 {"j", jl},
                 {"shift_violations", shift_violations},
                 {"monotone_violations", monotone_violations},
                 {"min_gap", min_gap}};
  rep.csv = std::move(csv);
  rep.seconds = seconds_since(start);
  return rep;
}

RunReport cmd_scan_conjecture(const std::string& objective_text, SpinLabel spin, int samples, int restarts,
                              std::uint64_t seed, double tol) {
  const auto start = Clock::now();
  const Objective objective = Objective::parse(objective_text);
  if (samples < 0) throw DomainError("sample count must be >= 0");
  if (spin.twice() > kMaxOptimizerTwiceL)
    throw ResourceError("conjecture scan is limited to twice_l <= " + std::to_string(kMaxOptimizerTwiceL));
  const double benchmark = coherent_benchmark(objective, spin);

  double sample_min = std::numeric_limits<double>::infinity();
  for (const PureState& psi : haar_states(spin, samples, derive_seed(seed, 0)))
    sample_min = std::min(sample_min, evaluate_objective(objective, psi));

  OptimizerOptions opt;
  opt.restarts = restarts;
  opt.seed = derive_seed(seed, 1);
  const OptimizationResult best = minimize_entropy(spin, objective, opt);

  const double overall = std::min(sample_min, best.best_value);
  const bool counterexample = overall < benchmark - tol;

  RunReport rep;
  rep.command = "scan-conjecture " + objective.to_string();
  rep.seed = seed;
  rep.tolerances = {{"benchmark_slack", tol}};
  rep.results = {{"objective", objective.to_string()},
                 {"twice_l", spin.twice()},
                 {"samples", samples},
                 {"restarts", best.restarts},
                 {"sample_min", samples > 0 ? json(sample_min) : json(nullptr)},
                 {"optimizer_min", best.best_value},
                 {"optimizer_converged", best.converged},
                 {"closest_coherent_fidelity", best.closest.fidelity},
                 {"coherent_benchmark", benchmark},
                 {"gap", overall - benchmark},
                 {"counterexample", counterexample},
                 {"open_conjecture", objective.kind == ObjectiveKind::kAngular}};
  rep.exit_code = counterexample ? kExitCounterexample : kExitOk;
  rep.seconds = seconds_since(start);
  return rep;
}

RunReport cmd_sun(int modes, int bosons, int k, const std::string& mode, int samples, std::uint64_t seed) {
  const auto start = Clock::now();
  RunReport rep;
  rep.command = "sun " + mode;
  rep.seed = seed;
  json& r = rep.results;
  r = {{"N", modes}, {"M", bosons}, {"k", k}, {"mode", mode}};
  const SymmetricSpace in(modes, bosons);
  CVector omega = CVector::Zero(modes);
  omega(0) = 1.0;
  const CVector coherent = coherent_condensate(in, omega);

  if (mode == "clone") {
    const FockChannelOutput out = cloning_channel(coherent * coherent.adjoint(), modes, bosons, k);
    double s = 0;
    cloning_map(CMatrix::Identity(in.dim(), in.dim()), modes, bosons, k, &s);
    r["dim_out"] = out.matrix.rows();
    r["kraus_scalar"] = s;
    r["coherent_spectrum"] = to_json(out.spectrum);
  } else if (mode == "prepare") {
    const CMatrix a = measure_prepare_channel(coherent, modes, bosons, k);
    const CMatrix b = measure_prepare_second_quantized(coherent, modes, bosons, k);
    r["dim_out"] = a.rows();
    r["coherent_spectrum"] = to_json(SpectrumVector::of(a));
    r["route_difference"] = (a - b).cwiseAbs().maxCoeff();
  } else if (mode == "decompose") {
    const int batch = std::max(samples, 20);
    const DecompositionResult d = decompose_measure_prepare(modes, bosons, k, batch, seed);
    r["coefficients"] = d.coefficients;
    r["active"] = d.active;
    r["residual"] = d.residual;
    r["batch_drift"] = d.batch_drift;
    r["batch_size"] = d.batch_size;
    rep.tolerances = {{"residual", 1e-9}};
  } else if (mode == "majorize") {
    const MajorizationReport m = sun_coherent_majorization_test(modes, bosons, k, samples, seed);
    r["samples"] = m.samples;
    r["passed"] = m.passed;
    r["failed"] = m.failed;
    r["worst_violation"] = m.worst_violation;
    r["coherent_spectrum"] = to_json(m.coherent_spectrum);
    rep.tolerances = {{"majorization_eps", 1e-9}};
  } else {
    throw DomainError("unknown sun mode '" + mode + "' (clone, prepare, decompose, majorize)");
  }
  rep.seconds = seconds_since(start);
  return rep;
}

}  // namespace wehrl
