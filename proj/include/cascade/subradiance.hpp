#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cascade/fock.hpp"

namespace cascade {

/// Collective lowering operator S- = c1^dag c0 + eps c2^dag c1 on a fixed-N basis.
OperatorMatrix lowering_operator(const BasisPtr& basis, double epsilon);

/// A dark state of S-, stored on the atomic basis. Amplitudes are real in
/// the closed forms; the k = 0 amplitude is positive.
struct SubradiantState {
  int atoms = 0;
  int p = 0;
  double epsilon = 0.0;
  BasisPtr basis;
  CVector amplitudes;
};

/// One term of the closed-form sum: |beta_k| in log form with its sign.
struct BetaTerm {
  int k = 0;
  double log_magnitude = 0.0;
  int sign = 1;
  Occupation occupation{};
};

/// beta_k = (-1/(2 eps))^k / k! * sqrt((2k)! (N-p-k)! / (p-k)!), k = 0..p.
std::vector<BetaTerm> beta_terms(int atoms, int p, double epsilon);

/// log |C_p|^2 = -log[(N-p)!/p! * 2F1(-p, 1/2; p-N; eps^-2)].
/// Throws DomainError when the hypergeometric factor is not positive.
double log_normalization_squared(int atoms, int p, double epsilon);

/// <k>_p = |C_p|^2 sum_k beta_k^2 k, from the closed-form coefficients.
double mean_k(int atoms, int p, double epsilon);

/// Closed-form p-subradiant state for even N (p = 0 is |0,0,N>).
SubradiantState subradiant_state(int atoms, int p, double epsilon);

/// N = 3 dark state (|0,2,1> - 2 eps |1,0,2>) / sqrt(1 + 4 eps^2).
SubradiantState subradiant_state_n3(double epsilon);

/// |sr>_1 used to define P_1: the p = 1 closed form for even N, the
/// three-atom state for N = 3, and their eps -> 0 limits at eps = 0.
/// Empty for odd N other than 3.
std::optional<SubradiantState> first_subradiant_state(int atoms, double epsilon);

/// Ground state |0,0,N>.
SubradiantState ground_state(int atoms);

/// Orthonormal basis of ker S- (singular values below `tolerance` count as zero).
std::vector<CVector> dark_space(const BasisPtr& atomic_basis, double epsilon, double tolerance = 1e-10);

/// Stationary P_1 of the two-atom effective superradiant equation.
double analytic_p1_n2(double epsilon);

/// Continuous p index for N >> 1; defined on 0 <= eps <= 1 + sqrt(2).
double p_from_epsilon(int atoms, double epsilon);

/// The two eps roots (smaller first) of the upper branch of p(eps) for 0 < p <= N/4.
std::pair<double, double> epsilon_pair(int atoms, double p);

struct QubitPair {
  int atoms = 0;
  int p = 0;
  double eps0 = 0.0;
  double eps1 = 0.0;
  double alpha = 0.0;
  SubradiantState sr0;
  SubradiantState sr1;
  CVector phi_plus;
  CVector phi_minus;
};

QubitPair qubit_pair(int atoms, int p);

/// <n1 + 4 n2> in units of hbar omega_r (level m carries m^2).
double kinetic_energy(const BasisPtr& atomic_basis, const CVector& state);

/// Energies of (a +- b)/sqrt(2(1 +- <a|b>)) for real-overlap states a, b.
struct SplitEnergies {
  double e_plus = 0.0;
  double e_minus = 0.0;
};
SplitEnergies superposition_energies(const BasisPtr& atomic_basis, const CVector& a, const CVector& b);

/// Ratio-of-hypergeometrics expression for <k> at (N, p, eps), p >= 1.
double kbar_closed_form(int atoms, int p, double epsilon);

struct DeltaPReport {
  double e_plus = 0.0;
  double e_minus = 0.0;
  double delta_direct = 0.0;   // |E+ - E-| from expectation values
  double delta_printed = 0.0;  // published splitting formula
  double discrepancy = 0.0;    // delta_printed - delta_direct
  double kbar0 = 0.0, kbar1 = 0.0;                // closed form
  double kbar0_direct = 0.0, kbar1_direct = 0.0;  // from amplitudes
};

DeltaPReport delta_p(const QubitPair& pair);

}  // namespace cascade
