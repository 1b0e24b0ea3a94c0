#pragma once

#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "cascade/fock.hpp"

namespace cascade {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

/// Rates in units of g; hbar = 1 and times are in units of 1/g.
struct CascadeParams {
  double g = 1.0;
  double epsilon = 0.0;
  double kappa = 0.0;

  /// Effective superradiant rate g^2 / kappa (requires kappa > 0).
  double gamma() const;
  void validate() const;
};

/// 0.005 / max(g, kappa, g * epsilon).
double default_time_step(const CascadeParams& params);

/// H = -i g [a c1 c0^dag + eps a c2 c1^dag - h.c.] on a full basis.
OperatorMatrix build_hamiltonian(const BasisPtr& basis, const CascadeParams& params);

/// Generator of d rho/dt = -i[H, rho] + sum_j (J rho J^dag - {J^dag J, rho}/2).
/// The vectorized form uses column-major vec(rho), index i + j * dim.
class Liouvillian {
 public:
  Liouvillian(BasisPtr basis, CMatrix hamiltonian, std::vector<CMatrix> jumps,
              std::optional<CascadeParams> params = std::nullopt);

  const BasisPtr& basis() const { return basis_; }
  Eigen::Index dim() const { return hamiltonian_.rows(); }
  const CMatrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<CMatrix>& jumps() const { return jumps_; }
  const std::optional<CascadeParams>& params() const { return params_; }

  CMatrix apply(const CMatrix& rho) const;
  const SparseCMatrix& superoperator() const { return super_; }
  CMatrix dense_superoperator() const { return CMatrix(super_); }

 private:
  BasisPtr basis_;
  CMatrix hamiltonian_;
  std::vector<CMatrix> jumps_;
  CMatrix effective_;  // -iH - sum_j J^dag J / 2
  std::optional<CascadeParams> params_;
  SparseCMatrix super_;
};

/// Full cascade equation with cavity damping 2 kappa L[a].
Liouvillian build_liouvillian(const BasisPtr& basis, const CascadeParams& params);

/// Bad-cavity equation Gamma L[S-] on the atomic basis, Gamma = g^2 / kappa.
Liouvillian build_effective_liouvillian(const BasisPtr& atomic_basis, const CascadeParams& params);

/// Frobenius norm of L(rho).
double generator_residual(const Liouvillian& l, const CMatrix& rho);

/// Dimension of ker L from a dense SVD (small systems only).
int stationary_dimension(const Liouvillian& l, double tolerance = 1e-10);

struct Observables {
  double n0 = 0.0, n1 = 0.0, n2 = 0.0, nph = 0.0;
  double p0 = 0.0, p1 = 0.0;  // NaN when |sr>_1 has no closed form at this N
  double purity = 0.0;
};

/// P_i = Tr[rho |sr>_i<sr|] with the projector acting on the atoms only.
Observables measure(const DensityMatrix& rho, double epsilon);

/// Population of the top photon layer n = n_max (0 for atomic bases).
double top_layer_population(const DensityMatrix& rho);

struct EvolveOptions {
  double dt = 0.005;
  double t_end = 100.0;
  double sample_interval = 0.1;
  double trace_tolerance = 1e-6;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Observables> samples;
  DensityMatrix final_state;
  double max_trace_drift = 0.0;
  double max_top_layer_population = 0.0;
  std::size_t reduced_dimension = 0;
};

/// Fixed-step RK4 on vec(rho), restricted to the smallest coordinate
/// subspace that contains vec(rho0) and is invariant under L. No trace
/// renormalization; drift above the tolerance aborts with IntegrationError.
/// Measurements use the epsilon stored in `l` (NaN P_i if absent).
Trajectory evolve(const Liouvillian& l, const DensityMatrix& rho0, const EvolveOptions& options);

struct SteadyStateOptions {
  double dt = 0.005;
  double horizon = 1e9;
  double tolerance = 1e-10;
  double trace_tolerance = 1e-6;
  /// Largest reduced dimension for which the dense one-step propagator is
  /// formed and squared; above it the integrator steps one RK4 step at a time.
  Eigen::Index dense_limit = 3000;
};

struct SteadyState {
  DensityMatrix state;
  double time = 0.0;  // first time at which the residual was below tolerance
  double residual = 0.0;
  double trace_drift = 0.0;
  double top_layer_population = 0.0;
  std::size_t steps = 0;
  std::size_t reduced_dimension = 0;
};

/// Integrates from rho0 until ||L vec(rho)|| < tolerance. The same RK4 step
/// as evolve() is used; runs of 2^k steps are applied as the k-fold squared
/// one-step propagator. Throws ConvergenceError past the horizon.
SteadyState steady_state(const Liouvillian& l, const DensityMatrix& rho0, const SteadyStateOptions& options);

}  // namespace cascade
