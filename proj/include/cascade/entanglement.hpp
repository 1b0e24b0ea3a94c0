#pragma once

#include <array>
#include <vector>

#include "cascade/fock.hpp"

namespace cascade {

// ---- discrete-variable PPT ------------------------------------------------

struct NegativityReport {
  /// Spectrum of rho^{T_j} on the rows/columns it actually touches; rows of
  /// the product basis that stay structurally empty add zero eigenvalues
  /// and are omitted.
  std::array<std::vector<double>, 3> eigenvalues;
  std::array<double, 3> min_per_slot{};
  std::array<std::vector<double>, 3> negative;  // eigenvalues below -1e-12
  double min_eigenvalue = 0.0;
  bool fully_inseparable = false;
};

NegativityReport ppt_report(const DensityMatrix& rho);

/// Two-atom negative eigenvalue: the closed form in eps and the published
/// moment-product form, both evaluated on the stationary mixture with P_1
/// from the bad-cavity expression.
struct AnalyticNegativity {
  double closed_form = 0.0;
  double moment_form = 0.0;
  double discrepancy = 0.0;  // moment_form - closed_form
};

AnalyticNegativity analytic_negativity_n2(double epsilon);

/// P_1 |sr>_1<sr| + (1 - P_1) |0,0,N><0,0,N| on the atomic basis (N = 2 or 3).
DensityMatrix stationary_mixture(int atoms, double epsilon, double p1);

// ---- continuous-variable description --------------------------------------

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

/// Second moments over R = (q0, p0, q1, p1, q2, p2), q = (c + c^dag)/sqrt2,
/// p = i(c^dag - c)/sqrt2. With this convention the vacuum variance is 1/2.
struct CovarianceMatrix {
  Matrix6 sigma = Matrix6::Zero();
  Vector6 mean = Vector6::Zero();

  double symmetry_error() const;
  /// Min eigenvalue of sigma + (i/2) Omega.
  double physicality() const;
};

/// Omega = (+) [[0, 1], [-1, 0]].
Matrix6 symplectic_form();

/// Moments from ladder operators applied exactly to the basis occupations,
/// so no truncation enters for states on a fixed-N basis.
CovarianceMatrix covariance_matrix(const DensityMatrix& rho);
CovarianceMatrix covariance_matrix(const BasisPtr& basis, const CVector& psi);

/// diag(N_j + 1/2, N_j + 1/2).
CovarianceMatrix thermal_covariance(const std::array<double, 3>& occupations);

struct CvPptReport {
  std::array<double, 3> min_eigenvalue{};
  std::array<bool, 3> no_entanglement_detected{};
};

/// Lambda_j sigma Lambda_j + (i/2) Omega >= 0 with Lambda_j flipping p_j.
CvPptReport cv_ppt_test(const CovarianceMatrix& cm);

class ThermalReference {
 public:
  explicit ThermalReference(const std::array<double, 3>& occupations);

  const std::array<double, 3>& occupations() const { return n_; }
  const std::array<double, 3>& y() const { return y_; }
  /// prod_j (1 - y_j)/(1 + y_j).
  double purity() const;
  /// Tr[tau^2] summed mode by mode until the remaining tail is below `tail`.
  double purity_truncated(double tail = 1e-12) const;
  /// <n0,n1,n2|tau|n0,n1,n2> = prod_j (1 - y_j) y_j^{n_j}.
  double diagonal(const Occupation& occ) const;

 private:
  std::array<double, 3> n_;
  std::array<double, 3> y_;
};

/// Three-mode thermal state with the occupations of rho. Requires a
/// diagonal covariance matrix and zero mean (to 1e-10).
ThermalReference reference_gaussian(const DensityMatrix& rho);

struct NonGaussianity {
  double delta = 0.0;
  double purity = 0.0;  // mu_rho
  double reference_purity = 0.0;  // mu_tau
  double overlap = 0.0;  // kappa_{rho tau}
};

/// delta = (mu_rho + mu_tau - 2 kappa) / (2 mu_rho).
NonGaussianity nong_measure(const DensityMatrix& rho, const ThermalReference& tau);

/// Overlap Tr[rho tau] summed over rho's basis.
double thermal_overlap(const DensityMatrix& rho, const ThermalReference& tau);

/// Closed form for the p-subradiant state of even N.
double nong_subradiant_closed_form(int atoms, int p, double epsilon);

/// Occupations of |sr>_p from the closed-form <k>_p.
std::array<double, 3> subradiant_occupations(int atoms, int p, double epsilon);

/// Published overlaps of the ground and first subradiant states with the
/// reference of the stationary mixture (N = 2 or 3).
struct PublishedOverlaps {
  double ground = 0.0;
  double subradiant = 0.0;
};
PublishedOverlaps published_overlaps(int atoms, double epsilon, const std::array<double, 3>& y);

struct StationaryNonGaussianity {
  double delta_printed = 0.0;  // published expression with published overlaps
  double delta_direct = 0.0;   // nong_measure on the assembled mixture
  double mu_rho = 0.0;
  double mu_tau = 0.0;
  PublishedOverlaps printed;
  PublishedOverlaps direct;
  std::array<double, 3> occupations{};
};

/// Non-Gaussianity of P_1 rho_1 + (1 - P_1) rho_0 for N = 2 or 3.
StationaryNonGaussianity nong_stationary(int atoms, double epsilon, double p1);

}  // namespace cascade
