#include <cmath>
#include <functional>
#include <numbers>

#include "cascade/entanglement.hpp"
#include "cascade/subradiance.hpp"

namespace cascade {

namespace {

// Ladder operators b_{2j} = c_j, b_{2j+1} = c_j^dag acting on a tuple.
// Returns false when the state is annihilated.
bool apply_ladder(int op, Occupation& occ, double& coef) {
  const int mode = op / 2;
  if (op % 2 == 0) {
    if (occ[mode] == 0) return false;
    coef *= std::sqrt(static_cast<double>(occ[mode]));
    --occ[mode];
  } else {
    ++occ[mode];
    coef *= std::sqrt(static_cast<double>(occ[mode]));
  }
  return true;
}

// Tr[rho B] with B a product of ladder operators (applied right to left),
// where rho(m, n) is supplied by `element`.
Complex ladder_expectation(const FockBasis& basis, const std::vector<int>& ops,
                           const std::function<Complex(std::size_t, std::size_t)>& element) {
  Complex sum = 0.0;
  for (std::size_t m = 0; m < basis.size(); ++m) {
    Occupation occ = basis.state(m);
    double coef = 1.0;
    bool alive = true;
    for (auto it = ops.rbegin(); it != ops.rend() && alive; ++it) alive = apply_ladder(*it, occ, coef);
    if (!alive) continue;
    const auto n = basis.find(occ);
    if (n) sum += coef * element(m, *n);
  }
  return sum;
}

CovarianceMatrix covariance_from(const FockBasis& basis,
                                 const std::function<Complex(std::size_t, std::size_t)>& element) {
  // R_i = sum_s u(i, s) b_s
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix<Complex, 6, 6> u = Eigen::Matrix<Complex, 6, 6>::Zero();
  for (int j = 0; j < 3; ++j) {
    u(2 * j, 2 * j) = r;
    u(2 * j, 2 * j + 1) = r;
    u(2 * j + 1, 2 * j) = -kI * r;
    u(2 * j + 1, 2 * j + 1) = kI * r;
  }
  Eigen::Matrix<Complex, 6, 1> first;
  Eigen::Matrix<Complex, 6, 6> second;
  for (int s = 0; s < 6; ++s) {
    first(s) = ladder_expectation(basis, {s}, element);
    for (int t = 0; t < 6; ++t) second(s, t) = ladder_expectation(basis, {s, t}, element);
  }
  CovarianceMatrix cm;
  const Eigen::Matrix<Complex, 6, 1> mean = u * first;
  const Eigen::Matrix<Complex, 6, 6> rr = u * second * u.transpose();
  cm.mean = mean.real();
  cm.sigma = rr.real() - cm.mean * cm.mean.transpose();
  return cm;
}

void require_no_photon(const FockBasis& basis, const char* who) {
  if (basis.has_photon()) throw DomainError(std::string(who) + ": trace out the photon first");
}

double log_y_power(double y, int n) {
  if (n == 0) return 0.0;
  return y > 0.0 ? n * std::log(y) : -INFINITY;
}

}  // namespace

double CovarianceMatrix::symmetry_error() const { return (sigma - sigma.transpose()).cwiseAbs().maxCoeff(); }

double CovarianceMatrix::physicality() const {
  const Eigen::Matrix<Complex, 6, 6> m = sigma.cast<Complex>() + 0.5 * kI * symplectic_form().cast<Complex>();
  return hermitian_eigenvalues(m).minCoeff();
}

Matrix6 symplectic_form() {
  Matrix6 omega = Matrix6::Zero();
  for (int j = 0; j < 3; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

CovarianceMatrix covariance_matrix(const DensityMatrix& rho) {
  const CMatrix& e = rho.entries;
  return covariance_from(*rho.basis, [&e](std::size_t m, std::size_t n) { return e(m, n); });
}

CovarianceMatrix covariance_matrix(const BasisPtr& basis, const CVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != basis->size()) throw DomainError("covariance_matrix: size mismatch");
  return covariance_from(*basis, [&psi](std::size_t m, std::size_t n) { return psi(m) * std::conj(psi(n)); });
}

CovarianceMatrix thermal_covariance(const std::array<double, 3>& occupations) {
  CovarianceMatrix cm;
  for (int j = 0; j < 3; ++j) {
    if (occupations[j] < 0.0) throw DomainError("thermal_covariance: occupations must be >= 0");
    cm.sigma(2 * j, 2 * j) = cm.sigma(2 * j + 1, 2 * j + 1) = occupations[j] + 0.5;
  }
  return cm;
}

CvPptReport cv_ppt_test(const CovarianceMatrix& cm) {
  const double phys = cm.physicality();
  if (phys < -1e-10)
    throw DomainError("cv_ppt_test: covariance matrix violates sigma + (i/2) Omega >= 0 (" + std::to_string(phys) + ")");
  CvPptReport report;
  for (int j = 0; j < 3; ++j) {
    Matrix6 lambda = Matrix6::Identity();
    lambda(2 * j + 1, 2 * j + 1) = -1.0;
    const CovarianceMatrix flipped{lambda * cm.sigma * lambda, lambda * cm.mean};
    report.min_eigenvalue[j] = flipped.physicality();
    report.no_entanglement_detected[j] = report.min_eigenvalue[j] >= -1e-12;
  }
  return report;
}

ThermalReference::ThermalReference(const std::array<double, 3>& occupations) : n_(occupations) {
  for (int j = 0; j < 3; ++j) {
    if (!(n_[j] >= 0.0)) throw DomainError("ThermalReference: occupations must be >= 0");
    y_[j] = n_[j] / (1.0 + n_[j]);
  }
}

double ThermalReference::purity() const {
  double mu = 1.0;
  for (double y : y_) mu *= (1.0 - y) / (1.0 + y);
  return mu;
}

double ThermalReference::purity_truncated(double tail) const {
  double mu = 1.0;
  for (double y : y_) {
    const double w = (1.0 - y) * (1.0 - y);
    double sum = 0.0, term = w;
    // Remaining tail after term s is term * y^2 / (1 - y^2).
    while (true) {
      sum += term;
      if (y == 0.0 || term * y * y / (1.0 - y * y) < tail) break;
      term *= y * y;
    }
    mu *= sum;
  }
  return mu;
}

double ThermalReference::diagonal(const Occupation& occ) const {
  double log_p = 0.0;
  for (int j = 0; j < 3; ++j) log_p += std::log1p(-y_[j]) + log_y_power(y_[j], occ[j]);
  return std::exp(log_p);
}

ThermalReference reference_gaussian(const DensityMatrix& rho) {
  require_no_photon(*rho.basis, "reference_gaussian");
  const auto cm = covariance_matrix(rho);
  if (cm.mean.cwiseAbs().maxCoeff() > 1e-10) throw DomainError("reference_gaussian: nonzero first moments");
  const Matrix6 off = cm.sigma - Matrix6(cm.sigma.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > 1e-10) throw DomainError("reference_gaussian: covariance matrix is not diagonal");
  std::array<double, 3> occ{};
  for (int j = 0; j < 3; ++j) {
    if (std::abs(cm.sigma(2 * j, 2 * j) - cm.sigma(2 * j + 1, 2 * j + 1)) > 1e-10)
      throw DomainError("reference_gaussian: unequal quadrature variances");
    occ[j] = std::max(0.0, cm.sigma(2 * j, 2 * j) - 0.5);
  }
  return ThermalReference(occ);
}

double thermal_overlap(const DensityMatrix& rho, const ThermalReference& tau) {
  require_no_photon(*rho.basis, "thermal_overlap");
  double kappa = 0.0;
  for (std::size_t i = 0; i < rho.basis->size(); ++i) kappa += rho.entries(i, i).real() * tau.diagonal(rho.basis->state(i));
  return kappa;
}

NonGaussianity nong_measure(const DensityMatrix& rho, const ThermalReference& tau) {
  NonGaussianity ng;
  ng.purity = rho.purity();
  ng.reference_purity = tau.purity();
  ng.overlap = thermal_overlap(rho, tau);
  ng.delta = (ng.purity + ng.reference_purity - 2.0 * ng.overlap) / (2.0 * ng.purity);
  return ng;
}

std::array<double, 3> subradiant_occupations(int atoms, int p, double epsilon) {
  const double k = p == 0 ? 0.0 : mean_k(atoms, p, epsilon);
  return {p - k, 2.0 * k, atoms - p - k};
}

double nong_subradiant_closed_form(int atoms, int p, double epsilon) {
  const ThermalReference tau(subradiant_occupations(atoms, p, epsilon));
  const auto& y = tau.y();
  const double log_c2 = log_normalization_squared(atoms, p, epsilon);
  double log_prefactor = log_c2;
  for (double yj : y) log_prefactor += std::log1p(-yj);
  double sum = 0.0;
  for (const auto& t : beta_terms(atoms, p, epsilon)) {
    double log_term = log_prefactor + 2.0 * t.log_magnitude;
    for (int j = 0; j < 3; ++j) log_term += log_y_power(y[j], t.occupation[j]);
    sum += std::exp(log_term);
  }
  return 0.5 + 0.5 * tau.purity() - sum;
}

PublishedOverlaps published_overlaps(int atoms, double epsilon, const std::array<double, 3>& y) {
  double common = 1.0;
  for (double yj : y) common *= (1.0 - yj) / (1.0 + yj);
  const double e2 = epsilon * epsilon;
  PublishedOverlaps o;
  o.ground = y[2] * y[2] * common;
  if (atoms == 2)
    o.subradiant = (y[1] * y[1] + 2.0 * e2 * y[0] * y[2]) / (1.0 + 2.0 * e2) * common;
  else if (atoms == 3)
    o.subradiant = y[2] * (y[1] * y[1] + 4.0 * e2 * y[0] * y[2]) / (1.0 + 4.0 * e2) * common;
  else
    throw DomainError("published_overlaps: N must be 2 or 3");
  return o;
}

StationaryNonGaussianity nong_stationary(int atoms, double epsilon, double p1) {
  if (atoms != 2 && atoms != 3) throw DomainError("nong_stationary: N must be 2 or 3");
  const DensityMatrix rho = stationary_mixture(atoms, epsilon, p1);
  const ThermalReference tau = reference_gaussian(rho);
  const NonGaussianity ng = nong_measure(rho, tau);

  StationaryNonGaussianity out;
  out.mu_rho = ng.purity;
  out.mu_tau = ng.reference_purity;
  out.delta_direct = ng.delta;
  out.occupations = tau.occupations();

  const auto sr = *first_subradiant_state(atoms, epsilon);
  const auto gs = ground_state(atoms);
  out.direct.ground = thermal_overlap(DensityMatrix::pure(gs.basis, gs.amplitudes), tau);
  out.direct.subradiant = thermal_overlap(DensityMatrix::pure(sr.basis, sr.amplitudes), tau);
  out.printed = published_overlaps(atoms, epsilon, tau.y());
  out.delta_printed = p1 * (p1 - 1.0) + 0.5 * (1.0 + out.mu_tau) - (1.0 - p1) * out.printed.ground -
                      p1 * out.printed.subradiant;
  return out;
}

}  // namespace cascade
