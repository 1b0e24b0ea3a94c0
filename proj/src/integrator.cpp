#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cascade/dynamics.hpp"

namespace cascade {

namespace {

/// L restricted to the coordinate subspace reachable from the support of
/// vec(rho0). Coordinates outside it stay exactly zero under the flow.
struct ReducedGenerator {
  std::vector<Eigen::Index> support;
  SparseCMatrix matrix;
  std::vector<Eigen::Index> diagonal;  // reduced positions of vec(rho)_{ii}
  Eigen::Index dim = 0;
};

ReducedGenerator reduce(const Liouvillian& l, const CVector& v0) {
  const SparseCMatrix& s = l.superoperator();
  const Eigen::Index n = s.cols();
  std::vector<Eigen::Index> position(n, -1);
  std::vector<Eigen::Index> stack;
  ReducedGenerator r;
  r.dim = l.dim();
  for (Eigen::Index i = 0; i < n; ++i)
    if (v0(i) != Complex{}) {
      position[i] = 0;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    const Eigen::Index j = stack.back();
    stack.pop_back();
    for (SparseCMatrix::InnerIterator it(s, j); it; ++it)
      if (position[it.row()] < 0) {
        position[it.row()] = 0;
        stack.push_back(it.row());
      }
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (position[i] >= 0) {
      position[i] = static_cast<Eigen::Index>(r.support.size());
      r.support.push_back(i);
    }

  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index jr = 0; jr < static_cast<Eigen::Index>(r.support.size()); ++jr)
    for (SparseCMatrix::InnerIterator it(s, r.support[jr]); it; ++it)
      triplets.emplace_back(position[it.row()], jr, it.value());
  const auto m = static_cast<Eigen::Index>(r.support.size());
  r.matrix.resize(m, m);
  r.matrix.setFromTriplets(triplets.begin(), triplets.end());
  r.matrix.makeCompressed();

  for (Eigen::Index i = 0; i < r.dim; ++i)
    if (position[i + i * r.dim] >= 0) r.diagonal.push_back(position[i + i * r.dim]);
  return r;
}

CVector gather(const ReducedGenerator& r, const CMatrix& rho) {
  CVector v(r.support.size());
  const Complex* data = rho.data();  // column-major, matches vec()
  for (std::size_t k = 0; k < r.support.size(); ++k) v(k) = data[r.support[k]];
  return v;
}

CMatrix scatter(const ReducedGenerator& r, const CVector& v) {
  CMatrix rho = CMatrix::Zero(r.dim, r.dim);
  Complex* data = rho.data();
  for (std::size_t k = 0; k < r.support.size(); ++k) data[r.support[k]] = v(k);
  return rho;
}

Complex trace(const ReducedGenerator& r, const CVector& v) {
  Complex t{};
  for (auto k : r.diagonal) t += v(k);
  return t;
}

void rk4_step(const SparseCMatrix& l, CVector& v, double h, CVector& k1, CVector& k2, CVector& k3, CVector& k4) {
  k1.noalias() = h * (l * v);
  k2.noalias() = h * (l * (v + 0.5 * k1));
  k3.noalias() = h * (l * (v + 0.5 * k2));
  k4.noalias() = h * (l * (v + k3));
  v += (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
}

/// One RK4 step as a matrix: I + A + A^2/2 + A^3/6 + A^4/24 with A = hL.
CMatrix rk4_propagator(const SparseCMatrix& l, double h) {
  const Eigen::Index m = l.rows();
  const CMatrix a = h * CMatrix(l);
  const CMatrix id = CMatrix::Identity(m, m);
  CMatrix b = id + a / 4.0;
  b = id + (a / 3.0) * b;
  b = id + (a / 2.0) * b;
  return id + a * b;
}

double check_health(const ReducedGenerator& r, const CVector& v, Complex trace0, double tol, double t) {
  const double drift = std::abs(trace(r, v) - trace0);
  if (!std::isfinite(drift) || drift > tol)
    throw IntegrationError("integrator unstable: trace drift " + std::to_string(drift) + " at t = " +
                               std::to_string(t) + " (reduce dt)",
                           t, drift);
  return drift;
}

double epsilon_of(const Liouvillian& l) {
  return l.params() ? l.params()->epsilon : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

Trajectory evolve(const Liouvillian& l, const DensityMatrix& rho0, const EvolveOptions& options) {
  if (!(options.dt > 0.0) || !(options.t_end >= 0.0) || !(options.sample_interval > 0.0))
    throw DomainError("evolve: dt and sample interval must be > 0, t_end >= 0");
  if (rho0.entries.rows() != l.dim()) throw DomainError("evolve: initial state does not match the generator");

  const CMatrix rho_init = rho0.entries;
  const auto r = reduce(l, Eigen::Map<const CVector>(rho_init.data(), rho_init.size()));
  CVector v = gather(r, rho_init);
  const Complex trace0 = trace(r, v);
  const double eps = epsilon_of(l);

  const auto total = static_cast<std::size_t>(std::llround(options.t_end / options.dt));
  const auto every = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(options.sample_interval / options.dt)));

  Trajectory traj{{}, {}, rho0, 0.0, 0.0, r.support.size()};
  auto record = [&](std::size_t step) {
    const double t = step * options.dt;
    traj.max_trace_drift = std::max(traj.max_trace_drift, check_health(r, v, trace0, options.trace_tolerance, t));
    DensityMatrix rho{rho0.basis, scatter(r, v)};
    traj.times.push_back(t);
    traj.samples.push_back(measure(rho, eps));
    traj.max_top_layer_population = std::max(traj.max_top_layer_population, top_layer_population(rho));
    traj.final_state = std::move(rho);
  };

  CVector k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size());
  record(0);
  for (std::size_t step = 1; step <= total; ++step) {
    rk4_step(r.matrix, v, options.dt, k1, k2, k3, k4);
    if (step % every == 0 || step == total) record(step);
  }
  return traj;
}

SteadyState steady_state(const Liouvillian& l, const DensityMatrix& rho0, const SteadyStateOptions& options) {
  if (!(options.dt > 0.0) || !(options.horizon > 0.0) || !(options.tolerance > 0.0))
    throw DomainError("steady_state: dt, horizon and tolerance must be > 0");
  if (rho0.entries.rows() != l.dim()) throw DomainError("steady_state: initial state does not match the generator");

  const CMatrix rho_init = rho0.entries;
  const auto r = reduce(l, Eigen::Map<const CVector>(rho_init.data(), rho_init.size()));
  CVector v = gather(r, rho_init);
  const Complex trace0 = trace(r, v);
  const auto m = static_cast<Eigen::Index>(r.support.size());

  std::size_t steps = 0;
  double drift = 0.0;
  double residual = (r.matrix * v).norm();

  if (m <= options.dense_limit) {
    CMatrix propagator = rk4_propagator(r.matrix, options.dt);
    std::size_t chunk = 1;
    while (residual >= options.tolerance) {
      if (steps * options.dt >= options.horizon)
        throw ConvergenceError("steady_state: no convergence within horizon, residual " + std::to_string(residual),
                               residual, steps * options.dt);
      v = propagator * v;
      steps += chunk;
      drift = std::max(drift, check_health(r, v, trace0, options.trace_tolerance, steps * options.dt));
      residual = (r.matrix * v).norm();
      if (residual < options.tolerance) break;
      propagator = propagator * propagator;
      chunk *= 2;
    }
  } else {
    CVector k1(m), k2(m), k3(m), k4(m);
    const std::size_t check_every = 1000;
    while (residual >= options.tolerance) {
      if (steps * options.dt >= options.horizon)
        throw ConvergenceError("steady_state: no convergence within horizon, residual " + std::to_string(residual),
                               residual, steps * options.dt);
      for (std::size_t i = 0; i < check_every; ++i) rk4_step(r.matrix, v, options.dt, k1, k2, k3, k4);
      steps += check_every;
      drift = std::max(drift, check_health(r, v, trace0, options.trace_tolerance, steps * options.dt));
      residual = (r.matrix * v).norm();
    }
  }

  SteadyState out{{rho0.basis, scatter(r, v)}, steps * options.dt, residual, drift, 0.0, steps, r.support.size()};
  out.top_layer_population = top_layer_population(out.state);
  return out;
}

}  // namespace cascade
