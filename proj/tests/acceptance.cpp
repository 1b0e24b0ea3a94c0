// One PASS/FAIL line per acceptance criterion, with the measured values.
// Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "cascade/dynamics.hpp"
#include "cascade/entanglement.hpp"
#include "cascade/io.hpp"
#include "cascade/subradiance.hpp"

using namespace cascade;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s | %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string num(double x) { return format_number(x); }

CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

SteadyState full_steady(int atoms, double kappa, double eps) {
  const CascadeParams p{1.0, eps, kappa};
  const auto b = build_basis(atoms, 2 * atoms);
  SteadyStateOptions opt;
  opt.dt = default_time_step(p);
  return steady_state(build_liouvillian(b, p), DensityMatrix::projector(b, {atoms, 0, 0, 0}), opt);
}

std::vector<double> grid121() {
  std::vector<double> v;
  for (int i = 0; i <= 120; ++i) v.push_back(i == 120 ? 1.0 + std::numbers::sqrt2 : (1.0 + std::numbers::sqrt2) * i / 120.0);
  return v;
}

// Local minima of y over grid points strictly inside (lo, hi).
int interior_minima(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i)
    if (x[i] > lo && x[i] < hi && y[i] < y[i - 1] && y[i] <= y[i + 1]) ++count;
  return count;
}

void criterion1() {
  double worst = 0.0, slowest = 0.0;
  std::string detail;
  for (double e : {0.1, 0.3, 0.5, 0.7, 0.9, 1.2, 2.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ss = full_steady(2, 10.0, e);
    const double dev = measure(ss.state, e).p1 - analytic_p1_n2(e);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    worst = std::max(worst, std::abs(dev));
    detail += "eps=" + num(e) + ":" + num(dev) + " ";
  }
  detail += "max|dev|=" + num(worst) + " (tol 1e-3), slowest point " + num(slowest) + " s";
  report(1, worst <= 1e-3 && slowest < 60.0, "N=2 kappa=10g stationary P1 vs bad-cavity formula", detail);
}

void criterion2() {
  double worst = 0.0, moment = 0.0, at_one = 0.0;
  for (double e : grid121()) {
    const auto rep = ppt_report(stationary_mixture(2, e, analytic_p1_n2(e)));
    const auto a = analytic_negativity_n2(e);
    worst = std::max(worst, std::abs(rep.min_eigenvalue - a.closed_form));
    moment = std::max(moment, std::abs(a.discrepancy));
  }
  at_one = std::abs(ppt_report(stationary_mixture(2, 1.0, analytic_p1_n2(1.0))).min_eigenvalue);
  report(2, worst <= 1e-8 && at_one < 1e-12, "N=2 min PT eigenvalue vs closed form on 121 points",
         "max|numeric-closed|=" + num(worst) + " (tol 1e-8), |A(1)|=" + num(at_one) +
             "; second printed line (moment product) max gap " + num(moment) + " (reported, not asserted)");
}

void criterion3() {
  bool ok = true;
  std::string detail;
  for (double e : {0.3, 0.5, 0.8}) {
    const auto rep = ppt_report(trace_out_photon(full_steady(3, 0.8, e).state));
    const auto& m = rep.min_per_slot;
    const double spread = std::max({std::abs(m[0] - m[1]), std::abs(m[1] - m[2]), std::abs(m[0] - m[2])});
    ok = ok && m[0] < -1e-6 && m[1] < -1e-6 && m[2] < -1e-6 && spread <= 1e-10;
    detail += "eps=" + num(e) + ": min=" + num(rep.min_eigenvalue) + " spread=" + num(spread) + "; ";
  }
  report(3, ok, "N=3 kappa=0.8g full inseparability, equal minima over partial transpositions", detail);
}

void criterion4() {
  double dark = 0.0;
  for (int n = 2; n <= 10; n += 2)
    for (int p = 0; 2 * p <= n; ++p)
      for (double e : {0.2, 0.5, 1.5}) {
        const auto s = subradiant_state(n, p, e);
        dark = std::max(dark, (lowering_operator(s.basis, e).entries * s.amplitudes).norm());
      }
  double gen = 0.0;
  for (int n : {2, 3})
    for (double e : {0.2, 0.5, 1.5}) {
      const auto b = build_basis(n, 2 * n);
      const auto l = build_liouvillian(b, {1.0, e, 0.8});
      const auto s = *first_subradiant_state(n, e);
      const CVector psi = embed_atomic_state(s.basis, s.amplitudes, b);
      gen = std::max(gen, (l.superoperator() * vec(psi * psi.adjoint())).norm());
    }
  double overlap = 0.0;
  for (double e : {0.2, 0.5, 1.5}) {
    const auto s = subradiant_state(2, 1, e);
    CVector ref = CVector::Zero(s.basis->size());
    ref(s.basis->index({0, 2, 0, 0})) = 1.0 / std::sqrt(1.0 + 2.0 * e * e);
    ref(s.basis->index({1, 0, 1, 0})) = -std::numbers::sqrt2 * e / std::sqrt(1.0 + 2.0 * e * e);
    overlap = std::max(overlap, 1.0 - std::abs(ref.dot(s.amplitudes)));
  }
  report(4, dark < 1e-12 && gen < 1e-12 && overlap < 1e-12, "dark-state suite",
         "max||S-|sr>||=" + num(dark) + ", max||L vec(sr x vac)||=" + num(gen) + ", 1-|overlap|=" + num(overlap));
}

void criterion5() {
  bool cv_blind = true, dv_sees = true;
  double cv_min = INFINITY, dv_max = -INFINITY;
  for (int n : {2, 3, 8})
    for (double e : {0.3, 0.6, 1.7}) {
      const auto s = n == 3 ? subradiant_state_n3(e) : subradiant_state(n, 1, e);
      const auto cv = cv_ppt_test(covariance_matrix(s.basis, s.amplitudes));
      for (int j = 0; j < 3; ++j) {
        cv_blind = cv_blind && cv.no_entanglement_detected[j];
        cv_min = std::min(cv_min, cv.min_eigenvalue[j]);
      }
      const auto rep = ppt_report(DensityMatrix::pure(s.basis, s.amplitudes));
      dv_sees = dv_sees && rep.min_eigenvalue < -1e-12;
      dv_max = std::max(dv_max, rep.min_eigenvalue);
    }
  report(5, cv_blind && dv_sees, "CV PPT satisfied while the discrete PPT detects negativity",
         "min CV PPT eigenvalue=" + num(cv_min) + ", largest discrete min PT eigenvalue=" + num(dv_max));
}

void criterion6() {
  double closed = 0.0;
  for (int n : {2, 4})
    for (int p = 0; 2 * p <= n; ++p)
      for (double e : {0.3, 0.5, 1.2, 2.0}) {
        const auto s = subradiant_state(n, p, e);
        const auto rho = DensityMatrix::pure(s.basis, s.amplitudes);
        closed = std::max(closed,
                          std::abs(nong_measure(rho, reference_gaussian(rho)).delta - nong_subradiant_closed_form(n, p, e)));
      }
  double overlap = 0.0, tail = 0.0;
  for (int n : {2, 3})
    for (double e : {0.3, 0.5, 2.0}) {
      const double p1 = n == 2 ? analytic_p1_n2(e) : 0.4;
      const auto ng = nong_stationary(n, e, p1);
      overlap = std::max({overlap, std::abs(ng.printed.ground - ng.direct.ground),
                          std::abs(ng.printed.subradiant - ng.direct.subradiant)});
      const ThermalReference tau(ng.occupations);
      tail = std::max(tail, std::abs(tau.purity_truncated(1e-12) - tau.purity()));
    }
  const ThermalReference tau({0.05, 0.02, 0.08});
  const auto b = FockBasis::product({11, 11, 11});
  DensityMatrix th{b, CMatrix::Zero(b->size(), b->size())};
  for (std::size_t i = 0; i < b->size(); ++i) th.entries(i, i) = tau.diagonal(b->state(i));
  th.entries /= th.entries.trace();
  const double thermal = std::abs(nong_measure(th, reference_gaussian(th)).delta);
  double min_large = INFINITY;
  for (double e : grid121()) {
    if (e < 0.01) continue;
    min_large = std::min(min_large, nong_subradiant_closed_form(50, static_cast<int>(std::lround(p_from_epsilon(50, e))), e));
  }
  const bool ok = closed <= 1e-10 && overlap <= 1e-10 && tail < 1e-10 && thermal <= 1e-10 && min_large > 0.0;
  report(6, ok, "non-Gaussianity oracles",
         "closed vs direct " + num(closed) + " (tol 1e-10); printed overlaps vs Tr[rho tau] " + num(overlap) +
             " (tol 1e-10); truncated purity gap " + num(tail) + "; thermal delta " + num(thermal) +
             "; min delta N=50 " + num(min_large) + " (eps=0 excluded)");
}

void criterion7() {
  std::vector<double> x, p1_3, a3, a2;
  for (double e : grid121()) {
    if (e > 1.0 + 1e-9) break;
    x.push_back(e);
  }
  for (double e : x) {
    const auto ss = full_steady(3, 0.8, e);
    p1_3.push_back(measure(ss.state, e).p1);
    a3.push_back(ppt_report(trace_out_photon(ss.state)).min_eigenvalue);
    a2.push_back(ppt_report(stationary_mixture(2, e, analytic_p1_n2(e))).min_eigenvalue);
  }
  std::size_t arg = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (p1_3[i] > p1_3[arg]) arg = i;
  const double p3_one = measure(full_steady(3, 0.8, 1.0).state, 1.0).p1;
  const bool n3 = x[arg] >= 0.4 && x[arg] <= 0.6 && arg > 0 && arg + 1 < x.size() && p1_3.front() < 1e-3 &&
                  p3_one < 1e-3;

  const double p2_zero = measure(full_steady(2, 10.0, 0.0).state, 0.0).p1;
  const double p2_one = measure(full_steady(2, 10.0, 1.0).state, 1.0).p1;
  const double p2_three = measure(full_steady(2, 10.0, 3.0).state, 3.0).p1;
  const bool n2 = p2_zero > 1.0 - 1e-3 && p2_one < 1e-3 && p2_three > 0.9;

  const int m2 = interior_minima(x, a2, 0.0, 1.0), m3 = interior_minima(x, a3, 0.0, 1.0);
  report(7, n3 && n2 && m2 == 1 && m3 == 1, "figure shapes",
         "N=3: argmax P1=" + num(x[arg]) + " (P1=" + num(p1_3[arg]) + "), P1(0)=" + num(p1_3.front()) +
             ", P1(1)=" + num(p3_one) + "; N=2 (kappa=10g): P1(0)=" + num(p2_zero) + ", P1(1)=" + num(p2_one) +
             ", P1(3)=" + num(p2_three) + " (need >0.9; formula gives " + num(analytic_p1_n2(3.0)) +
             "); interior minima of A on (0,1): N=2 " + std::to_string(m2) + ", N=3 " + std::to_string(m3));
}

void criterion8() {
  double product = 0.0, trip = 0.0, ortho = 0.0;
  for (int p = 1; p <= 12; ++p) {
    const auto [e0, e1] = epsilon_pair(50, p);
    product = std::max(product, std::abs(e0 * e1 - 1.0));
    trip = std::max({trip, std::abs(p_from_epsilon(50, e0) - p), std::abs(p_from_epsilon(50, e1) - p)});
  }
  std::string detail;
  bool computed = true;
  for (int p : {5, 10}) {
    const auto q = qubit_pair(50, p);
    ortho = std::max({ortho, std::abs(q.phi_plus.norm() - 1.0), std::abs(q.phi_minus.norm() - 1.0),
                      std::abs(q.phi_plus.dot(q.phi_minus))});
    const auto d = delta_p(q);
    computed = computed && std::isfinite(d.delta_direct);
    detail += "p=" + std::to_string(p) + ": Delta direct=" + num(d.delta_direct) + " printed=" + num(d.delta_printed) +
              " gap=" + num(d.discrepancy) + "; ";
  }
  report(8, product < 1e-12 && trip < 1e-10 && ortho < 1e-12 && computed, "p-degeneracy",
         "eps0*eps1-1 " + num(product) + ", round trip " + num(trip) + ", phi orthonormality " + num(ortho) + "; " +
             detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
