#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cascade/entanglement.hpp"
#include "cascade/subradiance.hpp"

using namespace cascade;

TEST_CASE("two-atom negativity: reference eigenvalues") {
  // minimum PT eigenvalues from an independent product-space eigensolve
  for (auto [e, ref] : {std::pair{0.1, -0.13256197984336973}, std::pair{0.3, -0.24145640606790114},
                        std::pair{0.5, -0.15713484026367724}}) {
    const auto rep = ppt_report(stationary_mixture(2, e, analytic_p1_n2(e)));
    for (int slot = 0; slot < 3; ++slot) CHECK(rep.min_per_slot[slot] == doctest::Approx(ref).epsilon(1e-12));
    CHECK(analytic_negativity_n2(e).closed_form == doctest::Approx(ref).epsilon(1e-12));
    CHECK(rep.fully_inseparable);
  }
}

TEST_CASE("two-atom negativity vanishes at eps = 0 and eps = 1") {
  for (double e : {0.0, 1.0}) {
    const auto rep = ppt_report(stationary_mixture(2, e, analytic_p1_n2(e)));
    CHECK(std::abs(rep.min_eigenvalue) < 1e-14);
    CHECK_FALSE(rep.fully_inseparable);
    CHECK(analytic_negativity_n2(e).closed_form == doctest::Approx(0.0));
  }
}

TEST_CASE("two printed negativity lines disagree") {
  const auto a = analytic_negativity_n2(0.5);
  CHECK(a.moment_form == doctest::Approx(-0.0785674).epsilon(1e-6));
  CHECK(std::abs(a.discrepancy) > 0.05);
  CHECK(analytic_negativity_n2(1.0).moment_form == 0.0);
}

TEST_CASE("three-atom mixture: equal minima over slots") {
  for (double e : {0.3, 0.5, 0.8}) {
    const auto rep = ppt_report(stationary_mixture(3, e, 0.4));
    CHECK(rep.min_eigenvalue < -1e-6);
    CHECK(std::abs(rep.min_per_slot[0] - rep.min_per_slot[1]) < 1e-10);
    CHECK(std::abs(rep.min_per_slot[1] - rep.min_per_slot[2]) < 1e-10);
    CHECK(rep.negative[0].size() >= 1);
  }
}

TEST_CASE("stationary mixture validation") {
  CHECK_THROWS_AS(stationary_mixture(2, 0.5, 1.5), DomainError);
  CHECK_THROWS_AS(stationary_mixture(5, 0.5, 0.5), DomainError);
  CHECK(stationary_mixture(3, 0.5, 0.3).check().ok);
}

TEST_CASE("covariance matrix of Fock and subradiant states") {
  const auto b = FockBasis::atomic(2);
  const auto fock = covariance_matrix(DensityMatrix::projector(b, {1, 0, 1, 0}));
  Matrix6 expect = Matrix6::Zero();
  expect.diagonal() << 1.5, 1.5, 0.5, 0.5, 1.5, 1.5;
  CHECK((fock.sigma - expect).norm() < 1e-14);
  CHECK(fock.mean.norm() == 0.0);
  CHECK(fock.physicality() >= -1e-14);

  for (int n : {2, 4, 8})
    for (double e : {0.3, 1.7}) {
      const auto s = subradiant_state(n, 1, e);
      const auto cm = covariance_matrix(s.basis, s.amplitudes);
      const auto occ = subradiant_occupations(n, 1, e);
      CHECK((cm.sigma - thermal_covariance(occ).sigma).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(cm.symmetry_error() < 1e-14);
      // the same from the density-matrix overload
      const auto cm2 = covariance_matrix(DensityMatrix::pure(s.basis, s.amplitudes));
      CHECK((cm.sigma - cm2.sigma).norm() < 1e-12);
    }
}

TEST_CASE("CV PPT: blind to subradiant entanglement, sees a two-mode correlated state") {
  for (int n : {2, 3, 8})
    for (double e : {0.3, 0.6, 1.7}) {
      const auto s = n == 3 ? subradiant_state_n3(e) : subradiant_state(n, 1, e);
      const auto cv = cv_ppt_test(covariance_matrix(s.basis, s.amplitudes));
      for (int j = 0; j < 3; ++j) CHECK(cv.no_entanglement_detected[j]);
      CHECK(ppt_report(DensityMatrix::pure(s.basis, s.amplitudes)).min_eigenvalue < -1e-6);
    }

  // (|0,0> + r|1,1>) on modes 0, 1: nu_min of the PT is 1/2 + n - c
  const auto prod = FockBasis::product({1, 1, 1});
  CVector psi = CVector::Zero(prod->size());
  const double r = 0.5;
  psi(prod->index({0, 0, 0, 0})) = 1.0;
  psi(prod->index({1, 1, 0, 0})) = r;
  psi /= psi.norm();
  const auto cm = covariance_matrix(prod, psi);
  CHECK(cm.sigma(0, 2) == doctest::Approx(r / (1 + r * r)));
  const auto cv = cv_ppt_test(cm);
  CHECK_FALSE(cv.no_entanglement_detected[0]);
  CHECK_FALSE(cv.no_entanglement_detected[1]);
  CHECK(cv.no_entanglement_detected[2]);

  CovarianceMatrix unphysical;
  unphysical.sigma = 0.1 * Matrix6::Identity();
  CHECK_THROWS_AS(cv_ppt_test(unphysical), DomainError);
}

TEST_CASE("thermal reference") {
  const ThermalReference tau({0.5, 0.0, 2.0});
  CHECK(tau.y()[0] == doctest::Approx(1.0 / 3.0));
  CHECK(tau.y()[1] == 0.0);
  CHECK(tau.purity() == doctest::Approx(0.5 * 1.0 * 0.2));
  CHECK(tau.purity_truncated(1e-15) == doctest::Approx(tau.purity()).epsilon(1e-12));
  CHECK(tau.diagonal({1, 0, 2, 0}) == doctest::Approx((2.0 / 3.0) * (1.0 / 3.0) * (1.0 / 3.0) * (4.0 / 9.0)));
  CHECK(tau.diagonal({0, 1, 0, 0}) == 0.0);
  CHECK_THROWS_AS(ThermalReference({-0.1, 0.0, 0.0}), DomainError);
}

TEST_CASE("non-Gaussianity: closed form vs direct for N <= 4") {
  for (int n : {2, 4})
    for (int p = 0; 2 * p <= n; ++p)
      for (double e : {0.3, 0.5, 1.2, 2.0}) {
        const auto s = subradiant_state(n, p, e);
        const auto rho = DensityMatrix::pure(s.basis, s.amplitudes);
        const auto ng = nong_measure(rho, reference_gaussian(rho));
        CHECK(ng.delta == doctest::Approx(nong_subradiant_closed_form(n, p, e)).epsilon(1e-10));
        CHECK(ng.delta > 0.0);
      }
}

TEST_CASE("non-Gaussianity of a thermal state is zero (truncated)") {
  const ThermalReference tau({0.05, 0.02, 0.08});
  const auto b = FockBasis::product({11, 11, 11});
  DensityMatrix rho{b, CMatrix::Zero(b->size(), b->size())};
  for (std::size_t i = 0; i < b->size(); ++i) rho.entries(i, i) = tau.diagonal(b->state(i));
  rho.entries /= rho.entries.trace();
  CHECK(std::abs(nong_measure(rho, reference_gaussian(rho)).delta) < 1e-10);
}

TEST_CASE("reference Gaussian needs a diagonal covariance matrix") {
  const auto prod = FockBasis::product({1, 1, 1});
  CVector psi = CVector::Zero(prod->size());
  psi(prod->index({0, 0, 0, 0})) = 1.0;
  psi(prod->index({1, 1, 0, 0})) = 1.0;
  psi /= psi.norm();
  CHECK_THROWS_AS(reference_gaussian(DensityMatrix::pure(prod, psi)), DomainError);
}

TEST_CASE("N = 50 sweep is non-Gaussian everywhere") {
  for (int i = 1; i <= 120; ++i) {
    const double e = (1.0 + std::numbers::sqrt2) * i / 120.0;
    const int p = static_cast<int>(std::lround(p_from_epsilon(50, e)));
    CHECK(nong_subradiant_closed_form(50, p, e) > 0.0);
  }
}

TEST_CASE("stationary non-Gaussianity and the printed overlaps") {
  for (int n : {2, 3})
    for (double e : {0.3, 0.5, 2.0}) {
      const double p1 = n == 2 ? analytic_p1_n2(e) : 0.4;
      const auto ng = nong_stationary(n, e, p1);
      double lift = 1.0;
      for (double y : reference_gaussian(stationary_mixture(n, e, p1)).y()) lift *= 1.0 + y;
      const double y2 = reference_gaussian(stationary_mixture(n, e, p1)).y()[2];
      // printed overlaps carry prod (1-y)/(1+y) where Tr[rho tau] has prod (1-y)
      CHECK(ng.printed.subradiant * lift == doctest::Approx(ng.direct.subradiant).epsilon(1e-12));
      CHECK(ng.printed.ground * lift * (n == 3 ? y2 : 1.0) == doctest::Approx(ng.direct.ground).epsilon(1e-12));
      CHECK(ng.delta_direct > 0.0);
      CHECK(ng.mu_rho == doctest::Approx(p1 * p1 + (1 - p1) * (1 - p1)).epsilon(1e-12));
    }
}
