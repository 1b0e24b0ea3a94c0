#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cascade/dynamics.hpp"
#include "cascade/subradiance.hpp"

using namespace cascade;

namespace {

CMatrix random_density(std::size_t d, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

SteadyState full_steady(int atoms, double kappa, double eps) {
  const CascadeParams p{1.0, eps, kappa};
  const auto b = build_basis(atoms, 2 * atoms);
  SteadyStateOptions opt;
  opt.dt = default_time_step(p);
  return steady_state(build_liouvillian(b, p), DensityMatrix::projector(b, {atoms, 0, 0, 0}), opt);
}

}  // namespace

TEST_CASE("parameters") {
  CHECK(CascadeParams{1.0, 0.0, 10.0}.gamma() == doctest::Approx(0.1));
  CHECK_THROWS_AS(CascadeParams({1.0, 0.0, 0.0}).gamma(), DomainError);
  CHECK_THROWS_AS(CascadeParams({1.0, -0.1, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(CascadeParams({0.0, 0.1, 1.0}).validate(), DomainError);
  CHECK(default_time_step({1.0, 0.3, 0.2}) == doctest::Approx(0.005));
  CHECK(default_time_step({1.0, 0.3, 10.0}) == doctest::Approx(0.0005));
  CHECK(default_time_step({1.0, 2.0, 0.2}) == doctest::Approx(0.0025));
}

TEST_CASE("generator preserves trace and Hermiticity (seeded)") {
  std::mt19937 rng(31337);
  for (int n : {2, 3}) {
    const auto b = build_basis(n, n + 1);
    const auto l = build_liouvillian(b, {1.0, 0.6, 0.4});
    for (int trial = 0; trial < 3; ++trial) {
      const CMatrix rho = random_density(b->size(), rng);
      const CMatrix out = l.apply(rho);
      CHECK(std::abs(out.trace()) < 1e-12);
      CHECK(hermiticity_error(out) < 1e-12);
      CHECK((vec(out) - l.superoperator() * vec(rho)).norm() < 1e-12);
    }
  }
}

TEST_CASE("dark states times vacuum are stationary") {
  for (int n : {2, 3})
    for (double e : {0.2, 0.9, 2.0}) {
      const auto b = build_basis(n, 2 * n);
      const auto l = build_liouvillian(b, {1.0, e, 0.8});
      for (const auto& s : {*first_subradiant_state(n, e), ground_state(n)}) {
        const CVector psi = embed_atomic_state(s.basis, s.amplitudes, b);
        CHECK(generator_residual(l, psi * psi.adjoint()) < 1e-12);
      }
      // a bright state is not
      const CVector bright = embed_atomic_state(FockBasis::atomic(n), ground_state(n).amplitudes, b, 1);
      CHECK(generator_residual(l, bright * bright.adjoint()) > 1e-3);
    }
}

TEST_CASE("bad-cavity equation reproduces the two-atom P_1 exactly") {
  const auto b = FockBasis::atomic(2);
  for (double e : {0.1, 0.3, 0.5, 0.7, 0.9, 1.2, 2.0, 3.0}) {
    const CascadeParams p{1.0, e, 10.0};
    const auto l = build_effective_liouvillian(b, p);
    SteadyStateOptions opt;
    opt.dt = 0.05 / p.gamma();
    opt.tolerance = 1e-13;
    const auto ss = steady_state(l, DensityMatrix::projector(b, {2, 0, 0, 0}), opt);
    const auto obs = measure(ss.state, e);
    CHECK(obs.p1 == doctest::Approx(analytic_p1_n2(e)).epsilon(1e-10));
    CHECK(obs.p0 + obs.p1 == doctest::Approx(1.0).epsilon(1e-10));
  }
  // kernel: operators on the two-dimensional dark space
  CHECK(stationary_dimension(build_effective_liouvillian(b, {1.0, 0.5, 10.0})) == 4);
}

TEST_CASE("full dynamics at kappa = 10 g (reference values)") {
  // from an independent dense solver; O(g^2/kappa^2) off the bad-cavity formula
  const auto a = full_steady(2, 10.0, 0.5);
  CHECK(measure(a.state, 0.5).p1 == doctest::Approx(0.33664).epsilon(2e-5));
  const auto b = full_steady(2, 10.0, 0.1);
  CHECK(measure(b.state, 0.1).p1 == doctest::Approx(0.95652).epsilon(2e-5));
  CHECK(a.residual < 1e-10);
  CHECK(a.trace_drift < 1e-6);
}

TEST_CASE("three atoms at kappa = 0.8 g (reference values)") {
  for (auto [e, ref] : {std::pair{0.3, 0.35829}, std::pair{0.5, 0.45364}, std::pair{0.8, 0.11306}}) {
    const auto ss = full_steady(3, 0.8, e);
    const auto obs = measure(ss.state, e);
    CHECK(obs.p1 == doctest::Approx(ref).epsilon(2e-5));
    CHECK(obs.p0 + obs.p1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(obs.nph < 1e-9);
    CHECK(ss.reduced_dimension < 70 * 70);
  }
  // eps = 0: everything ends in |0,3,0>
  const auto zero = full_steady(3, 0.8, 0.0);
  const auto z = measure(zero.state, 0.0);
  CHECK(z.p1 < 1e-9);
  CHECK(z.p0 < 1e-9);
  CHECK(z.n1 == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("trajectory: initial row, Q balance and block structure") {
  const CascadeParams p{1.0, 0.3, 0.2};
  const auto b = build_basis(2, 4);
  EvolveOptions opt;
  opt.dt = 0.005;
  opt.t_end = 20.0;
  opt.sample_interval = 0.005;
  const auto tr = evolve(build_liouvillian(b, p), DensityMatrix::projector(b, {2, 0, 0, 0}), opt);
  REQUIRE(tr.times.size() == 4001);
  CHECK(tr.samples[0].n0 == 2.0);
  CHECK(tr.samples[0].n1 == 0.0);
  CHECK(tr.samples[0].nph == 0.0);
  CHECK(tr.max_trace_drift < 1e-10);

  // d<Q>/dt = -2 kappa <n>, Q = 2 n0 + n1 + n
  double integral = 0.0;
  for (std::size_t k = 1; k < tr.times.size(); ++k)
    integral += 0.5 * (tr.samples[k].nph + tr.samples[k - 1].nph) * (tr.times[k] - tr.times[k - 1]);
  const auto& last = tr.samples.back();
  CHECK(2.0 * last.n0 + last.n1 + last.nph == doctest::Approx(4.0 - 2.0 * p.kappa * integral).epsilon(1e-6));

  // coherences between different Q values are exactly zero
  const auto& rho = tr.final_state;
  for (std::size_t i = 0; i < b->size(); ++i)
    for (std::size_t j = 0; j < b->size(); ++j) {
      const auto& s = b->state(i);
      const auto& t = b->state(j);
      if (2 * s[0] + s[1] + s[3] != 2 * t[0] + t[1] + t[3]) CHECK(rho.entries(i, j) == Complex{});
    }
  CHECK(rho.check(1e-12, 1e-9, 1e-10).ok);
}

TEST_CASE("integrator health and convergence errors") {
  const CascadeParams p{1.0, 0.5, 0.3};
  const auto b = build_basis(2, 4);
  const auto l = build_liouvillian(b, p);
  const auto rho0 = DensityMatrix::projector(b, {2, 0, 0, 0});
  EvolveOptions bad;
  bad.dt = 5.0;
  bad.t_end = 500.0;
  CHECK_THROWS_AS(evolve(l, rho0, bad), IntegrationError);

  SteadyStateOptions short_run;
  short_run.horizon = 1.0;
  CHECK_THROWS_AS(steady_state(l, rho0, short_run), ConvergenceError);

  EvolveOptions neg;
  neg.dt = -1.0;
  CHECK_THROWS_AS(evolve(l, rho0, neg), DomainError);
}

TEST_CASE("photon cutoff n_max = 2N is exact") {
  // Q = 2 n0 + n1 + n starts at 2N and never grows, so a larger cutoff adds
  // only unreachable states.
  const CascadeParams p{1.0, 0.5, 0.3};
  EvolveOptions opt;
  opt.t_end = 30.0;
  opt.sample_interval = 10.0;
  std::vector<Observables> last;
  std::vector<std::size_t> dims;
  for (int cutoff : {6, 9}) {
    const auto b = build_basis(3, cutoff);
    const auto tr = evolve(build_liouvillian(b, p), DensityMatrix::projector(b, {3, 0, 0, 0}), opt);
    last.push_back(tr.samples.back());
    dims.push_back(tr.reduced_dimension);
  }
  CHECK(dims[0] == dims[1]);
  CHECK(last[0].n0 == doctest::Approx(last[1].n0).epsilon(1e-13));
  CHECK(last[0].nph == doctest::Approx(last[1].nph).epsilon(1e-13));
  CHECK(last[0].p1 == doctest::Approx(last[1].p1).epsilon(1e-13));
}
