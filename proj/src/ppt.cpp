#include <algorithm>
#include <cmath>
#include <numbers>

#include "cascade/entanglement.hpp"
#include "cascade/subradiance.hpp"

namespace cascade {

NegativityReport ppt_report(const DensityMatrix& rho) {
  if (rho.basis->kind() != BasisKind::atomic && rho.basis->kind() != BasisKind::product)
    throw DomainError("ppt_report: expected an atomic-mode density matrix");
  NegativityReport report;
  report.min_eigenvalue = INFINITY;
  for (int slot = 0; slot < 3; ++slot) {
    const CMatrix t = partial_transpose(rho, slot).entries;
    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      if (t.row(i).cwiseAbs().maxCoeff() > 0.0 || t.col(i).cwiseAbs().maxCoeff() > 0.0) active.push_back(i);
    const auto m = static_cast<Eigen::Index>(active.size());
    CMatrix sub(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = t(active[i], active[j]);
    const RVector ev = hermitian_eigenvalues(sub);
    report.eigenvalues[slot].assign(ev.data(), ev.data() + ev.size());
    // omitted rows contribute zero eigenvalues
    double lowest = m > 0 ? ev.minCoeff() : 0.0;
    if (m < t.rows()) lowest = std::min(lowest, 0.0);
    report.min_per_slot[slot] = lowest;
    for (double e : report.eigenvalues[slot])
      if (e < -1e-12) report.negative[slot].push_back(e);
    report.min_eigenvalue = std::min(report.min_eigenvalue, report.min_per_slot[slot]);
  }
  report.fully_inseparable = !report.negative[0].empty() && !report.negative[1].empty() && !report.negative[2].empty();
  return report;
}

AnalyticNegativity analytic_negativity_n2(double epsilon) {
  if (epsilon < 0.0) throw DomainError("analytic_negativity_n2: epsilon must be >= 0");
  const double e2 = epsilon * epsilon;
  AnalyticNegativity a;
  a.closed_form = -(std::numbers::sqrt2 / 2.0) * epsilon * (e2 - 1.0) * (e2 - 1.0) /
                  ((0.5 + e2) * (0.5 + e2) * (2.0 + e2));

  // <N0> = P1 2 eps^2/(1 + 2 eps^2), <N1> = P1 2/(1 + 2 eps^2). The factor
  // P1/(1 - eps^2)^2 = 2/(9 eps^2 + 2(1 - eps^2)^2) is taken in cancelled
  // form so the expression stays finite at eps = 1.
  const double p1_over = 2.0 / (9.0 * e2 + 2.0 * (1.0 - e2) * (1.0 - e2));
  const double p1 = analytic_p1_n2(epsilon);
  const double n0n1_over = p1 * p1_over * 4.0 * e2 / ((1.0 + 2.0 * e2) * (1.0 + 2.0 * e2));
  a.moment_form = -(e2 * (2.0 * e2 + 3.0) * (2.0 * e2 + 3.0) + 2.0) / (4.0 * std::numbers::sqrt2) * n0n1_over;
  a.discrepancy = a.moment_form - a.closed_form;
  return a;
}

DensityMatrix stationary_mixture(int atoms, double epsilon, double p1) {
  if (p1 < 0.0 || p1 > 1.0) throw DomainError("stationary_mixture: P_1 must lie in [0, 1]");
  const auto sr = first_subradiant_state(atoms, epsilon);
  if (!sr) throw DomainError("stationary_mixture: no closed-form |sr>_1 for this N");
  const auto ground = ground_state(atoms);
  DensityMatrix rho{sr->basis, p1 * sr->amplitudes * sr->amplitudes.adjoint()};
  rho.entries += (1.0 - p1) * ground.amplitudes * ground.amplitudes.adjoint();
  return rho;
}

}  // namespace cascade
