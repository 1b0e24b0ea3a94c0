#include "cascade/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "cascade/subradiance.hpp"

namespace cascade {

namespace {

struct Entry {
  Eigen::Index row, col;
  Complex value;
};

std::vector<Entry> nonzeros(const CMatrix& m) {
  std::vector<Entry> out;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Complex{}) out.push_back({i, j, m(i, j)});
  return out;
}

}  // namespace

double CascadeParams::gamma() const {
  if (!(kappa > 0.0)) throw DomainError("CascadeParams::gamma: kappa must be > 0");
  return g * g / kappa;
}

void CascadeParams::validate() const {
  if (!(g > 0.0)) throw DomainError("CascadeParams: g must be > 0");
  if (!(kappa >= 0.0)) throw DomainError("CascadeParams: kappa must be >= 0");
  if (!(epsilon >= 0.0)) throw DomainError("CascadeParams: epsilon must be >= 0");
}

double default_time_step(const CascadeParams& params) {
  return 0.005 / std::max({params.g, params.kappa, params.g * params.epsilon});
}

OperatorMatrix build_hamiltonian(const BasisPtr& basis, const CascadeParams& params) {
  params.validate();
  if (basis->kind() != BasisKind::full) throw DomainError("build_hamiltonian: basis must include the photon slot");
  const CMatrix a = mode_annihilator(basis, Mode::photon).entries;
  // S+ = c0^dag c1 + eps c1^dag c2
  const CMatrix raise = transfer_operator(basis, Mode::c1, Mode::c0).entries +
                        params.epsilon * transfer_operator(basis, Mode::c2, Mode::c1).entries;
  const CMatrix x = a * raise;
  CMatrix h = -kI * params.g * (x - x.adjoint());
  return {basis, basis, std::move(h)};
}

Liouvillian::Liouvillian(BasisPtr basis, CMatrix hamiltonian, std::vector<CMatrix> jumps,
                         std::optional<CascadeParams> params)
    : basis_(std::move(basis)), hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)), params_(params) {
  const Eigen::Index d = hamiltonian_.rows();
  if (hamiltonian_.cols() != d || static_cast<std::size_t>(d) != basis_->size())
    throw DomainError("Liouvillian: Hamiltonian does not match the basis");
  effective_ = -kI * hamiltonian_;
  for (const auto& j : jumps_) {
    if (j.rows() != d || j.cols() != d) throw DomainError("Liouvillian: jump operator size mismatch");
    effective_ -= 0.5 * j.adjoint() * j;
  }

  // vec(K rho) = (I (x) K) vec(rho); vec(rho K^dag) = (conj(K) (x) I) vec(rho);
  // vec(J rho J^dag) = (conj(J) (x) J) vec(rho).
  std::vector<Eigen::Triplet<Complex>> triplets;
  const auto k = nonzeros(effective_);
  triplets.reserve(2 * k.size() * d);
  for (const auto& e : k) {
    for (Eigen::Index b = 0; b < d; ++b) {
      triplets.emplace_back(e.row + b * d, e.col + b * d, e.value);
      triplets.emplace_back(b + e.row * d, b + e.col * d, std::conj(e.value));
    }
  }
  for (const auto& j : jumps_) {
    const auto nz = nonzeros(j);
    for (const auto& left : nz)
      for (const auto& right : nz)
        triplets.emplace_back(left.row + right.row * d, left.col + right.col * d, left.value * std::conj(right.value));
  }
  super_.resize(d * d, d * d);
  super_.setFromTriplets(triplets.begin(), triplets.end());
  super_.prune(Complex{0.0, 0.0});
  super_.makeCompressed();
}

CMatrix Liouvillian::apply(const CMatrix& rho) const {
  CMatrix out = effective_ * rho;
  out += rho * effective_.adjoint();
  for (const auto& j : jumps_) out += j * rho * j.adjoint();
  return out;
}

Liouvillian build_liouvillian(const BasisPtr& basis, const CascadeParams& params) {
  auto h = build_hamiltonian(basis, params);
  std::vector<CMatrix> jumps;
  if (params.kappa > 0.0) jumps.push_back(std::sqrt(2.0 * params.kappa) * mode_annihilator(basis, Mode::photon).entries);
  return Liouvillian(basis, std::move(h.entries), std::move(jumps), params);
}

Liouvillian build_effective_liouvillian(const BasisPtr& atomic_basis, const CascadeParams& params) {
  params.validate();
  if (atomic_basis->kind() != BasisKind::atomic) throw DomainError("build_effective_liouvillian: atomic basis required");
  const double gamma = params.gamma();
  std::vector<CMatrix> jumps{std::sqrt(gamma) * lowering_operator(atomic_basis, params.epsilon).entries};
  const auto d = static_cast<Eigen::Index>(atomic_basis->size());
  return Liouvillian(atomic_basis, CMatrix::Zero(d, d), std::move(jumps), params);
}

double generator_residual(const Liouvillian& l, const CMatrix& rho) { return l.apply(rho).norm(); }

int stationary_dimension(const Liouvillian& l, double tolerance) {
  Eigen::BDCSVD<CMatrix> svd(l.dense_superoperator());
  const auto& sv = svd.singularValues();
  return static_cast<int>((sv.array() < tolerance).count());
}

double top_layer_population(const DensityMatrix& rho) {
  const auto& b = *rho.basis;
  if (!b.has_photon()) return 0.0;
  double pop = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.state(i)[3] == b.photon_cutoff()) pop += rho.entries(i, i).real();
  return pop;
}

Observables measure(const DensityMatrix& rho, double epsilon) {
  const auto& b = *rho.basis;
  if (b.kind() != BasisKind::full && b.kind() != BasisKind::atomic)
    throw DomainError("measure: expected a full or atomic basis");
  Observables o;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double w = rho.entries(i, i).real();
    const auto& s = b.state(i);
    o.n0 += w * s[0];
    o.n1 += w * s[1];
    o.n2 += w * s[2];
    o.nph += w * s[3];
  }
  o.purity = rho.purity();

  const DensityMatrix atoms = b.kind() == BasisKind::full ? trace_out_photon(rho) : rho;
  const auto ground = ground_state(b.atoms());
  auto project = [&](const SubradiantState& s) {
    return s.amplitudes.dot(atoms.entries * s.amplitudes).real();
  };
  o.p0 = project(ground);
  if (std::isnan(epsilon)) {
    o.p1 = std::numeric_limits<double>::quiet_NaN();
  } else if (auto sr = first_subradiant_state(b.atoms(), epsilon)) {
    o.p1 = project(*sr);
  } else {
    o.p1 = std::numeric_limits<double>::quiet_NaN();
  }
  return o;
}

}  // namespace cascade
