#include "wehrl/fock.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "wehrl/errors.hpp"
#include "wehrl/majorization.hpp"
#include "wehrl/repcore.hpp"
#include "wehrl/sampling.hpp"

namespace wehrl {

namespace {

void fill_basis(int modes, int left, Occupation& cur, int pos, std::vector<Occupation>& out) {
  if (pos == modes - 1) {
    cur[pos] = left;
    out.push_back(cur);
    return;
  }
  for (int n = left; n >= 0; --n) {
    cur[pos] = n;
    fill_basis(modes, left - n, cur, pos + 1, out);
  }
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

double occupation_log_factorial(const Occupation& n) {
  double s = 0;
  for (int v : n) s += log_factorial(v);
  return s;
}

void check_sector(int modes, int bosons) {
  const long d = SymmetricSpace::dimension(modes, bosons);
  if (d > kMaxFockDim)
    throw ResourceError("Fock sector N=" + std::to_string(modes) + " M=" + std::to_string(bosons) + " has dimension " +
                        std::to_string(d) + " > guard " + std::to_string(kMaxFockDim));
}

void check_density(const CMatrix& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim)
    throw DomainError("density matrix shape " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                      " does not match sector dimension " + std::to_string(dim));
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-12) throw DomainError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12) throw DomainError("density matrix is not positive semidefinite");
}

// X ↦ Σ_{i1..ik} a*_{i1}..a*_{ik} X a_{ik}..a_{i1}, unnormalized.
CMatrix cloning_raw(const FockOperatorSet& ops, CMatrix x, int bosons, int k) {
  for (int t = 0; t < k; ++t) {
    const int d = ops.space(bosons + t + 1).dim();
    CMatrix next = CMatrix::Zero(d, d);
    for (int i = 0; i < ops.modes(); ++i) {
      const CSparse& a = ops.creation(i, bosons + t);
      const CMatrix ax = a * x;
      next.noalias() += ax * a.adjoint();
    }
    x = std::move(next);
  }
  return x;
}

CMatrix kraus_gram(const FockOperatorSet& ops, int bosons, int k) {
  const int top = ops.space(bosons + k).dim();
  CMatrix z = CMatrix::Identity(top, top);
  for (int t = k - 1; t >= 0; --t) {
    const int d = ops.space(bosons + t).dim();
    CMatrix next = CMatrix::Zero(d, d);
    for (int i = 0; i < ops.modes(); ++i) {
      const CSparse& a = ops.creation(i, bosons + t);
      const CMatrix za = z * a;
      next.noalias() += a.adjoint() * za;
    }
    z = std::move(next);
  }
  return z;
}

double verified_scalar(const CMatrix& gram) {
  const int d = static_cast<int>(gram.rows());
  const double s = std::real(gram.trace()) / d;
  const double dev = (gram - s * CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(s > 0) || dev > 1e-8 * s)
    throw ConsistencyError("cloning Kraus family is not a multiple of the identity (deviation " + std::to_string(dev) +
                           ", scalar " + std::to_string(s) + ")");
  return s;
}

struct ClonerCache {
  FockOperatorSet ops;
  double scalar;
};

ClonerCache make_cloner(int modes, int bosons, int k) {
  if (k < 0) throw DomainError("clone count k must be >= 0");
  check_sector(modes, bosons + k);
  FockOperatorSet ops(modes, bosons + k);
  const double s = verified_scalar(kraus_gram(ops, bosons, k));
  return {std::move(ops), s};
}

// a^n = Π_i a_i^{n_i} : H_M -> H_{M-|n|}
CMatrix annihilation_monomial(const FockOperatorSet& ops, const Occupation& n, int bosons) {
  const int d = ops.space(bosons).dim();
  CSparse acc(d, d);
  acc.setIdentity();
  int cur = bosons;
  for (int i = 0; i < ops.modes(); ++i)
    for (int r = 0; r < n[i]; ++r) {
      acc = ops.annihilation(i, cur) * acc;
      --cur;
    }
  return CMatrix(acc);
}

// a*^n ψ / sqrt(n!) for every n in H_k, as columns.
CMatrix creation_columns(const FockOperatorSet& ops, const CVector& psi, int bosons, int k) {
  const SymmetricSpace& out_space = ops.space(bosons + k);
  const SymmetricSpace& q_space = ops.space(k);
  CMatrix v(out_space.dim(), q_space.dim());
  for (int q = 0; q < q_space.dim(); ++q) {
    const Occupation& occ = q_space.occupation(q);
    CVector w = psi;
    int cur = bosons;
    for (int i = 0; i < ops.modes(); ++i)
      for (int r = 0; r < occ[i]; ++r) {
        w = ops.creation(i, cur) * w;
        ++cur;
      }
    v.col(q) = w * std::exp(-0.5 * occupation_log_factorial(occ));
  }
  return v;
}

CMatrix trace_normalized(CMatrix m) {
  m = hermitian_part(m);
  const double t = std::real(m.trace());
  if (!(t > 0)) throw ConsistencyError("channel output has non-positive trace");
  return m / t;
}

CMatrix stack_real(const CMatrix& m) {
  CMatrix out(2 * m.size(), 1);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    out(2 * i, 0) = m.data()[i].real();
    out(2 * i + 1, 0) = m.data()[i].imag();
  }
  return out;
}

struct BatchFit {
  std::vector<double> coefficients;
  double residual;
};

BatchFit fit_batch(int modes, int bosons, int k, const std::vector<bool>& active, int batch_size, std::uint64_t seed) {
  const int terms = static_cast<int>(std::count(active.begin(), active.end(), true));
  const int dk = static_cast<int>(SymmetricSpace::dimension(modes, k));
  const long rows_per = 2L * dk * dk;
  Eigen::MatrixXd a(rows_per * batch_size, terms);
  Eigen::VectorXd b(rows_per * batch_size);
  const int dim_in = static_cast<int>(SymmetricSpace::dimension(modes, bosons));

  std::vector<ClonerCache> cloners;
  for (int ell = 0; ell <= k; ++ell)
    cloners.push_back(active[ell] ? make_cloner(modes, k - ell, ell) : ClonerCache{FockOperatorSet(modes, 0), 1.0});

  for (int s = 0; s < batch_size; ++s) {
    Rng rng(derive_seed(seed, s));
    const CVector psi = haar_vector(dim_in, rng);
    const CMatrix rho = hermitian_part(psi * psi.adjoint());
    const CMatrix target = measure_prepare_channel(psi, modes, bosons, k);
    const CMatrix t = stack_real(target);
    for (long r = 0; r < rows_per; ++r) b(s * rows_per + r) = t(r, 0).real();
    int col = 0;
    for (int ell = 0; ell <= k; ++ell) {
      if (!active[ell]) continue;
      const int r = k - ell;
      const CMatrix gamma = reduced_density(rho, modes, bosons, r) / falling_factorial(bosons, r);
      const CMatrix term =
          cloning_raw(cloners[ell].ops, gamma, r, ell) / cloners[ell].scalar;
      const CMatrix tt = stack_real(term);
      for (long q = 0; q < rows_per; ++q) a(s * rows_per + q, col) = tt(q, 0).real();
      ++col;
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < terms)
    throw ConsistencyError("decomposition terms are linearly dependent (rank " + std::to_string(qr.rank()) + " of " +
                           std::to_string(terms) + ")");
  const Eigen::VectorXd c = qr.solve(b);
  const double residual = (a * c - b).cwiseAbs().maxCoeff();

  BatchFit fit{std::vector<double>(k + 1, 0.0), residual};
  int col = 0;
  for (int ell = 0; ell <= k; ++ell)
    if (active[ell]) fit.coefficients[ell] = c(col++);
  return fit;
}

}  // namespace

long SymmetricSpace::dimension(int modes, int bosons) {
  if (modes < 1 || bosons < 0) return 0;
  // C(M+N-1, N-1) built incrementally; exact in double for all guarded sizes.
  double d = 1;
  for (int i = 1; i < modes; ++i) {
    d = d * (bosons + i) / i;
    if (d > 1e15) return static_cast<long>(1e15);
  }
  return static_cast<long>(std::llround(d));
}

SymmetricSpace::SymmetricSpace(int modes, int bosons) : modes_(modes), bosons_(bosons) {
  if (modes < 2) throw DomainError("symmetric space needs N >= 2 modes, got " + std::to_string(modes));
  if (bosons < 0) throw DomainError("boson number must be >= 0, got " + std::to_string(bosons));
  check_sector(modes, bosons);
  Occupation cur(modes, 0);
  fill_basis(modes, bosons, cur, 0, basis_);
  for (int i = 0; i < dim(); ++i) index_.emplace(basis_[i], i);
}

int SymmetricSpace::index_of(const Occupation& n) const {
  auto it = index_.find(n);
  return it == index_.end() ? -1 : it->second;
}

FockOperatorSet::FockOperatorSet(int modes, int max_bosons) : modes_(modes), max_bosons_(max_bosons) {
  if (max_bosons < 0) throw DomainError("max boson number must be >= 0");
  for (int m = 0; m <= max_bosons; ++m) spaces_.emplace_back(modes, m);
  for (int m = 0; m < max_bosons; ++m) {
    const SymmetricSpace& from = spaces_[m];
    const SymmetricSpace& to = spaces_[m + 1];
    std::vector<CSparse> per_mode;
    for (int i = 0; i < modes; ++i) {
      std::vector<Eigen::Triplet<cplx>> entries;
      for (int c = 0; c < from.dim(); ++c) {
        Occupation n = from.occupation(c);
        const double amp = std::sqrt(n[i] + 1.0);
        ++n[i];
        entries.emplace_back(to.index_of(n), c, amp);
      }
      CSparse a(to.dim(), from.dim());
      a.setFromTriplets(entries.begin(), entries.end());
      per_mode.push_back(std::move(a));
    }
    creation_.push_back(std::move(per_mode));
  }
}

double FockOperatorSet::commutator_defect() const {
  double worst = 0;
  for (int m = 1; m < max_bosons_; ++m) {
    const int d = spaces_[m].dim();
    for (int i = 0; i < modes_; ++i)
      for (int j = 0; j < modes_; ++j) {
        // a_i a*_j - a*_j a_i on H_m
        const CMatrix lhs = CMatrix(annihilation(i, m + 1) * creation(j, m)) -
                            CMatrix(creation(j, m - 1) * annihilation(i, m));
        const CMatrix expected = (i == j ? 1.0 : 0.0) * CMatrix::Identity(d, d);
        worst = std::max(worst, (lhs - expected).cwiseAbs().maxCoeff());
      }
  }
  if (max_bosons_ >= 1) {
    // Vacuum sector: a_i a*_j |0> = δ_ij |0>.
    for (int i = 0; i < modes_; ++i)
      for (int j = 0; j < modes_; ++j) {
        const CMatrix v = CMatrix(annihilation(i, 1) * creation(j, 0));
        worst = std::max(worst, std::abs(v(0, 0) - (i == j ? 1.0 : 0.0)));
      }
  }
  return worst;
}

CVector coherent_condensate(const SymmetricSpace& space, const CVector& omega) {
  if (omega.size() != space.modes()) throw DomainError("condensate vector has wrong number of modes");
  const double norm = omega.norm();
  if (!(norm > 0)) throw DomainError("condensate vector is zero");
  const CVector w = omega / norm;
  const double log_mfact = log_factorial(space.bosons());
  CVector out(space.dim());
  for (int idx = 0; idx < space.dim(); ++idx) {
    const Occupation& n = space.occupation(idx);
    cplx amp = std::exp(0.5 * (log_mfact - occupation_log_factorial(n)));
    for (int i = 0; i < space.modes(); ++i)
      for (int r = 0; r < n[i]; ++r) amp *= w(i);
    out(idx) = amp;
  }
  return out;
}

CMatrix symmetric_power(const CMatrix& u, const SymmetricSpace& space) {
  const int modes = space.modes();
  if (u.rows() != modes || u.cols() != modes) throw DomainError("unitary size does not match the number of modes");
  const FockOperatorSet ops(modes, space.bosons());
  CMatrix prev = CMatrix::Ones(1, 1);
  for (int m = 1; m <= space.bosons(); ++m) {
    const SymmetricSpace& cur = ops.space(m);
    const SymmetricSpace& below = ops.space(m - 1);
    CMatrix next(cur.dim(), cur.dim());
    for (int c = 0; c < cur.dim(); ++c) {
      Occupation n = cur.occupation(c);
      const int i = static_cast<int>(std::find_if(n.begin(), n.end(), [](int v) { return v > 0; }) - n.begin());
      const double ni = n[i];
      --n[i];
      const CVector src = prev.col(below.index_of(n));
      // U|n> = b*_i U|n - e_i> / sqrt(n_i), b*_i = Σ_j U_ji a*_j
      CVector v = CVector::Zero(cur.dim());
      for (int j = 0; j < modes; ++j) v += u(j, i) * (ops.creation(j, m - 1) * src);
      next.col(c) = v / std::sqrt(ni);
    }
    prev = std::move(next);
  }
  return prev;
}

CMatrix cloning_kraus_gram(int modes, int bosons, int k) {
  if (k < 0) throw DomainError("clone count k must be >= 0");
  check_sector(modes, bosons + k);
  return kraus_gram(FockOperatorSet(modes, bosons + k), bosons, k);
}

CMatrix cloning_map(const CMatrix& x, int modes, int bosons, int k, double* scalar) {
  const long d = SymmetricSpace::dimension(modes, bosons);
  if (x.rows() != d || x.cols() != d) throw DomainError("input does not live on the M-boson sector");
  const ClonerCache c = make_cloner(modes, bosons, k);
  if (scalar) *scalar = c.scalar;
  return cloning_raw(c.ops, x, bosons, k) / c.scalar;
}

FockChannelOutput cloning_channel(const CMatrix& rho, int modes, int bosons, int k) {
  check_density(rho, static_cast<int>(SymmetricSpace::dimension(modes, bosons)));
  CMatrix out = hermitian_part(cloning_map(rho, modes, bosons, k));
  SpectrumVector s = SpectrumVector::of(out);
  return {bosons + k, std::move(out), std::move(s)};
}

double falling_factorial(int m, int ell) {
  double f = 1;
  for (int t = 0; t < ell; ++t) f *= (m - t);
  return f;
}

CMatrix reduced_density(const CMatrix& rho, int modes, int bosons, int ell) {
  if (ell < 0 || ell > bosons)
    throw DomainError("reduced density order " + std::to_string(ell) + " outside 0.." + std::to_string(bosons));
  const FockOperatorSet ops(modes, bosons);
  if (rho.rows() != ops.space(bosons).dim() || rho.cols() != rho.rows())
    throw DomainError("input does not live on the M-boson sector");
  const SymmetricSpace& target = ops.space(ell);
  const int d = target.dim();
  std::vector<CMatrix> mono(d), mono_rho(d);
  std::vector<double> weight(d);
  for (int n = 0; n < d; ++n) {
    mono[n] = annihilation_monomial(ops, target.occupation(n), bosons);
    mono_rho[n] = mono[n] * rho;
    weight[n] = std::exp(0.5 * (log_factorial(ell) - occupation_log_factorial(target.occupation(n))));
  }
  CMatrix gamma(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      // tr(a^n ρ (a^{n'})†)
      gamma(a, b) = weight[a] * weight[b] * (mono_rho[a].cwiseProduct(mono[b].conjugate())).sum();
  return hermitian_part(gamma);
}

CMatrix measure_prepare_channel(const CVector& psi, int modes, int bosons, int k) {
  if (k < 0) throw DomainError("clone count k must be >= 0");
  check_sector(modes, bosons + k);
  const SymmetricSpace in(modes, bosons), out(modes, k), joint(modes, bosons + k);
  if (psi.size() != in.dim()) throw DomainError("state does not live on the M-boson sector");
  const double log_binom = log_factorial(bosons + k) - log_factorial(bosons) - log_factorial(k);
  // W(n, q) = <n|_{M+k} embedded into H_M ⊗ H_k, contracted with ψ ⊗ |q>.
  CMatrix w = CMatrix::Zero(joint.dim(), out.dim());
  Occupation p(modes);
  for (int n = 0; n < joint.dim(); ++n) {
    const Occupation& occ = joint.occupation(n);
    for (int q = 0; q < out.dim(); ++q) {
      const Occupation& qo = out.occupation(q);
      bool ok = true;
      double log_c = -log_binom;
      for (int i = 0; i < modes && ok; ++i) {
        p[i] = occ[i] - qo[i];
        if (p[i] < 0) ok = false;
        else log_c += log_factorial(occ[i]) - log_factorial(p[i]) - log_factorial(qo[i]);
      }
      if (ok) w(n, q) = std::exp(0.5 * log_c) * psi(in.index_of(p));
    }
  }
  return trace_normalized(w.adjoint() * w);
}

CMatrix measure_prepare_second_quantized(const CVector& psi, int modes, int bosons, int k) {
  if (k < 0) throw DomainError("clone count k must be >= 0");
  check_sector(modes, bosons + k);
  const FockOperatorSet ops(modes, std::max(bosons + k, k));
  if (psi.size() != ops.space(bosons).dim()) throw DomainError("state does not live on the M-boson sector");
  const CMatrix v = creation_columns(ops, psi, bosons, k);
  return trace_normalized(v.adjoint() * v);
}

DecompositionResult decompose_measure_prepare(int modes, int bosons, int k, int batch_size, std::uint64_t seed) {
  if (k < 0) throw DomainError("clone count k must be >= 0");
  if (batch_size < 1) throw DomainError("batch size must be positive");
  check_sector(modes, bosons + k);
  DecompositionResult res;
  res.batch_size = batch_size;
  res.active.resize(k + 1);
  for (int ell = 0; ell <= k; ++ell) res.active[ell] = (k - ell) <= bosons;

  const BatchFit first = fit_batch(modes, bosons, k, res.active, batch_size, derive_seed(seed, 0));
  const BatchFit second = fit_batch(modes, bosons, k, res.active, batch_size, derive_seed(seed, 1));
  res.coefficients = first.coefficients;
  res.residual = std::max(first.residual, second.residual);
  for (int ell = 0; ell <= k; ++ell)
    res.batch_drift = std::max(res.batch_drift, std::abs(first.coefficients[ell] - second.coefficients[ell]));
  if (res.residual > 1e-9)
    throw ConsistencyError("measure-and-prepare decomposition residual " + std::to_string(res.residual) +
                           " exceeds 1e-9");
  return res;
}

MajorizationReport sun_coherent_majorization_test(int modes, int bosons, int k, int samples, std::uint64_t seed,
                                                  double eps) {
  if (samples < 0) throw DomainError("sample count must be >= 0");
  const ClonerCache cloner = make_cloner(modes, bosons, k);
  const int dim = cloner.ops.space(bosons).dim();
  MajorizationReport rep;
  rep.samples = samples;
  // Ω = e_1 is the highest-weight condensate, basis index 0.
  CMatrix coh = CMatrix::Zero(dim, dim);
  coh(0, 0) = 1.0;
  rep.coherent_spectrum = SpectrumVector::of(cloning_raw(cloner.ops, coh, bosons, k) / cloner.scalar);

  std::vector<double> deficit(samples);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    const CVector psi = haar_vector(dim, rng);
    const CMatrix out = cloning_raw(cloner.ops, psi * psi.adjoint(), bosons, k) / cloner.scalar;
    deficit[s] = majorization_deficit(rep.coherent_spectrum, SpectrumVector::of(out));
  }
  rep.worst_violation = samples ? -std::numeric_limits<double>::infinity() : 0.0;
  for (double d : deficit) {
    rep.worst_violation = std::max(rep.worst_violation, d);
    if (d <= eps) ++rep.passed;
    else ++rep.failed;
  }
  return rep;
}

}  // namespace wehrl
