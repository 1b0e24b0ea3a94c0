#include "cascade/subradiance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "cascade/special.hpp"

namespace cascade {

namespace {

const double kEpsMax = 1.0 + std::numbers::sqrt2;

void require_even_sector(int atoms, int p) {
  if (atoms < 2 || atoms % 2 != 0)
    throw DomainError("subradiant_state: closed form needs even N >= 2 (use subradiant_state_n3 or dark_space)");
  if (p < 0 || 2 * p > atoms) throw DomainError("subradiant_state: p must lie in [0, N/2]");
}

SubradiantState single_fock(int atoms, int p, double epsilon, const Occupation& occ) {
  SubradiantState s{atoms, p, epsilon, FockBasis::atomic(atoms), {}};
  s.amplitudes = CVector::Zero(s.basis->size());
  s.amplitudes(s.basis->index(occ)) = 1.0;
  return s;
}

}  // namespace

OperatorMatrix lowering_operator(const BasisPtr& basis, double epsilon) {
  auto s = transfer_operator(basis, Mode::c0, Mode::c1);
  s.entries += epsilon * transfer_operator(basis, Mode::c1, Mode::c2).entries;
  return s;
}

std::vector<BetaTerm> beta_terms(int atoms, int p, double epsilon) {
  require_even_sector(atoms, p);
  if (p > 0 && !(epsilon > 0.0)) throw DomainError("beta_terms: epsilon must be > 0 for p >= 1");
  std::vector<BetaTerm> terms;
  for (int k = 0; k <= p; ++k) {
    BetaTerm t;
    t.k = k;
    t.sign = (k % 2 == 0) ? 1 : -1;
    t.log_magnitude = -log_factorial(k) +
                      0.5 * (log_factorial(2 * k) + log_factorial(atoms - p - k) - log_factorial(p - k));
    if (k > 0) t.log_magnitude -= k * std::log(2.0 * epsilon);
    t.occupation = {p - k, 2 * k, atoms - p - k, 0};
    terms.push_back(t);
  }
  return terms;
}

double log_normalization_squared(int atoms, int p, double epsilon) {
  require_even_sector(atoms, p);
  if (p == 0) return -log_factorial(atoms);
  if (!(epsilon > 0.0)) throw DomainError("log_normalization_squared: epsilon must be > 0");
  const double f = hyp2f1_terminating(p, 0.5, static_cast<double>(p - atoms), 1.0 / (epsilon * epsilon));
  if (!(f > 0.0)) throw DomainError("log_normalization_squared: 2F1 <= 0, C_p undefined");
  return -(log_factorial(atoms - p) - log_factorial(p) + std::log(f));
}

double mean_k(int atoms, int p, double epsilon) {
  const double log_c2 = log_normalization_squared(atoms, p, epsilon);
  double sum = 0.0;
  for (const auto& t : beta_terms(atoms, p, epsilon)) sum += t.k * std::exp(log_c2 + 2.0 * t.log_magnitude);
  return sum;
}

SubradiantState subradiant_state(int atoms, int p, double epsilon) {
  require_even_sector(atoms, p);
  if (p == 0) return single_fock(atoms, 0, epsilon, {0, 0, atoms, 0});
  if (!(epsilon > 0.0)) throw DomainError("subradiant_state: epsilon must be > 0 for p >= 1");

  // Normalize in log space: (2k)! and 1/(2 eps)^k overflow long before N = 100.
  const auto terms = beta_terms(atoms, p, epsilon);
  double top = -INFINITY;
  for (const auto& t : terms) top = std::max(top, t.log_magnitude);

  SubradiantState s{atoms, p, epsilon, FockBasis::atomic(atoms), {}};
  s.amplitudes = CVector::Zero(s.basis->size());
  for (const auto& t : terms) s.amplitudes(s.basis->index(t.occupation)) = t.sign * std::exp(t.log_magnitude - top);
  s.amplitudes /= s.amplitudes.norm();
  return s;
}

SubradiantState subradiant_state_n3(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("subradiant_state_n3: epsilon must be > 0");
  SubradiantState s{3, 1, epsilon, FockBasis::atomic(3), {}};
  s.amplitudes = CVector::Zero(s.basis->size());
  const double norm = std::sqrt(1.0 + 4.0 * epsilon * epsilon);
  s.amplitudes(s.basis->index({0, 2, 1, 0})) = 1.0 / norm;
  s.amplitudes(s.basis->index({1, 0, 2, 0})) = -2.0 * epsilon / norm;
  return s;
}

std::optional<SubradiantState> first_subradiant_state(int atoms, double epsilon) {
  if (epsilon < 0.0) throw DomainError("first_subradiant_state: epsilon must be >= 0");
  if (atoms == 3) return epsilon > 0.0 ? subradiant_state_n3(epsilon) : single_fock(3, 1, 0.0, {0, 2, 1, 0});
  if (atoms >= 2 && atoms % 2 == 0)
    return epsilon > 0.0 ? subradiant_state(atoms, 1, epsilon) : single_fock(atoms, 1, 0.0, {0, 2, atoms - 2, 0});
  return std::nullopt;
}

SubradiantState ground_state(int atoms) { return single_fock(atoms, 0, 0.0, {0, 0, atoms, 0}); }

std::vector<CVector> dark_space(const BasisPtr& atomic_basis, double epsilon, double tolerance) {
  const CMatrix s = lowering_operator(atomic_basis, epsilon).entries;
  Eigen::JacobiSVD<CMatrix> svd(s, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const CMatrix& v = svd.matrixV();
  std::vector<CVector> kernel;
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    const double sigma = i < sv.size() ? sv(i) : 0.0;
    if (sigma < tolerance) kernel.push_back(v.col(i));
  }
  return kernel;
}

double analytic_p1_n2(double epsilon) {
  if (epsilon < 0.0) throw DomainError("analytic_p1_n2: epsilon must be >= 0");
  const double e2 = epsilon * epsilon;
  const double num = 2.0 * (1.0 - e2) * (1.0 - e2);
  return num / (9.0 * e2 + num);
}

double p_from_epsilon(int atoms, double epsilon) {
  if (epsilon < 0.0 || epsilon > kEpsMax + 1e-12)
    throw DomainError("p_from_epsilon: epsilon outside [0, 1 + sqrt(2)]");
  const double e2 = epsilon * epsilon;
  if (e2 <= 1.0 / 3.0) return 0.5 * atoms * (1.0 - 2.0 * e2) / (1.0 - e2);
  const double r = (1.0 - e2) / (1.0 + e2);
  return atoms * r * r;
}

std::pair<double, double> epsilon_pair(int atoms, double p) {
  if (atoms < 1 || !(p > 0.0) || p > 0.25 * atoms) throw DomainError("epsilon_pair: need 0 < p <= N/4");
  const double r = std::sqrt(p / atoms);
  return {std::sqrt((1.0 - r) / (1.0 + r)), std::sqrt((1.0 + r) / (1.0 - r))};
}

QubitPair qubit_pair(int atoms, int p) {
  if (atoms % 2 != 0) throw DomainError("qubit_pair: N must be even");
  const auto [e0, e1] = epsilon_pair(atoms, static_cast<double>(p));
  QubitPair q{atoms, p, e0, e1, 0.0, subradiant_state(atoms, p, e0), subradiant_state(atoms, p, e1), {}, {}};
  q.alpha = q.sr0.amplitudes.dot(q.sr1.amplitudes).real();
  if (std::abs(q.alpha) >= 1.0 - 1e-12) throw DomainError("qubit_pair: the two subradiant states coincide");
  q.phi_plus = (q.sr0.amplitudes + q.sr1.amplitudes) / std::sqrt(2.0 * (1.0 + q.alpha));
  q.phi_minus = (q.sr0.amplitudes - q.sr1.amplitudes) / std::sqrt(2.0 * (1.0 - q.alpha));
  return q;
}

double kinetic_energy(const BasisPtr& atomic_basis, const CVector& state) {
  double e = 0.0;
  for (std::size_t i = 0; i < atomic_basis->size(); ++i) {
    const auto& s = atomic_basis->state(i);
    e += std::norm(state(i)) * (s[1] + 4.0 * s[2]);
  }
  return e;
}

SplitEnergies superposition_energies(const BasisPtr& atomic_basis, const CVector& a, const CVector& b) {
  const CVector plus = a + b, minus = a - b;
  return {kinetic_energy(atomic_basis, plus) / plus.squaredNorm(),
          kinetic_energy(atomic_basis, minus) / minus.squaredNorm()};
}

double kbar_closed_form(int atoms, int p, double epsilon) {
  if (p < 1) throw DomainError("kbar_closed_form: p must be >= 1");
  const double z = 1.0 / (epsilon * epsilon);
  // p! (N-p-1)! / ((N-p)! (p-1)!) = p / (N-p)
  const double prefactor = static_cast<double>(p) / (2.0 * epsilon * epsilon * (atoms - p));
  return prefactor * hyp2f1_terminating(p - 1, 1.5, 1.0 + p - atoms, z) /
         hyp2f1_terminating(p, 0.5, static_cast<double>(p - atoms), z);
}

DeltaPReport delta_p(const QubitPair& pair) {
  DeltaPReport r;
  const auto& basis = pair.sr0.basis;
  const auto split = superposition_energies(basis, pair.sr0.amplitudes, pair.sr1.amplitudes);
  r.e_plus = split.e_plus;
  r.e_minus = split.e_minus;
  r.delta_direct = std::abs(r.e_plus - r.e_minus);

  auto direct_k = [&](const CVector& v) {
    double k = 0.0;
    for (std::size_t i = 0; i < basis->size(); ++i) k += std::norm(v(i)) * 0.5 * basis->state(i)[1];
    return k;
  };
  r.kbar0_direct = direct_k(pair.sr0.amplitudes);
  r.kbar1_direct = direct_k(pair.sr1.amplitudes);
  r.kbar0 = kbar_closed_form(pair.atoms, pair.p, pair.eps0);
  r.kbar1 = kbar_closed_form(pair.atoms, pair.p, pair.eps1);

  const double ksum = r.kbar0 + r.kbar1;
  const double n = pair.atoms, p = pair.p;
  r.delta_printed = std::abs(4.0 * (2.0 * n - 2.0 * p - 2.0 * ksum) / std::sqrt(2.0 * (1.0 + pair.alpha)) -
                             2.0 * ksum / std::sqrt(2.0 * (1.0 - pair.alpha)));
  r.discrepancy = r.delta_printed - r.delta_direct;
  return r;
}

}  // namespace cascade
