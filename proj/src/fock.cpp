#include "cascade/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace cascade {

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double hermiticity_error(const CMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

namespace {

std::string occupation_string(const Occupation& occ) {
  return "|" + std::to_string(occ[0]) + "," + std::to_string(occ[1]) + "," + std::to_string(occ[2]) + "," +
         std::to_string(occ[3]) + ">";
}

bool is_fixed_n(const FockBasis& b) { return b.kind() == BasisKind::full || b.kind() == BasisKind::atomic; }

BasisPtr same_kind_with_atoms(const FockBasis& b, int atoms) {
  if (b.kind() == BasisKind::full) return FockBasis::full(atoms, b.photon_cutoff());
  return FockBasis::atomic(atoms);
}

}  // namespace

FockBasis::FockBasis(BasisKind kind, std::vector<Occupation> states) : kind_(kind), states_(std::move(states)) {
  std::sort(states_.begin(), states_.end());
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

BasisPtr FockBasis::full(int atoms, int photon_cutoff) {
  if (atoms < 0 || photon_cutoff < 0) throw DomainError("FockBasis::full: negative atoms or photon cutoff");
  std::vector<Occupation> states;
  for (int n0 = 0; n0 <= atoms; ++n0)
    for (int n1 = 0; n0 + n1 <= atoms; ++n1)
      for (int n = 0; n <= photon_cutoff; ++n) states.push_back({n0, n1, atoms - n0 - n1, n});
  auto b = std::shared_ptr<FockBasis>(new FockBasis(BasisKind::full, std::move(states)));
  b->atoms_ = atoms;
  b->photon_cutoff_ = photon_cutoff;
  b->cutoffs_ = {atoms, atoms, atoms};
  return b;
}

BasisPtr FockBasis::atomic(int atoms) {
  if (atoms < 0) throw DomainError("FockBasis::atomic: negative atom number");
  std::vector<Occupation> states;
  for (int n0 = 0; n0 <= atoms; ++n0)
    for (int n1 = 0; n0 + n1 <= atoms; ++n1) states.push_back({n0, n1, atoms - n0 - n1, 0});
  auto b = std::shared_ptr<FockBasis>(new FockBasis(BasisKind::atomic, std::move(states)));
  b->atoms_ = atoms;
  b->cutoffs_ = {atoms, atoms, atoms};
  b->kept_ = {true, true, true, false};
  return b;
}

BasisPtr FockBasis::product(std::array<int, 3> cutoffs) {
  for (int c : cutoffs)
    if (c < 0) throw DomainError("FockBasis::product: negative cutoff");
  std::vector<Occupation> states;
  for (int n0 = 0; n0 <= cutoffs[0]; ++n0)
    for (int n1 = 0; n1 <= cutoffs[1]; ++n1)
      for (int n2 = 0; n2 <= cutoffs[2]; ++n2) states.push_back({n0, n1, n2, 0});
  auto b = std::shared_ptr<FockBasis>(new FockBasis(BasisKind::product, std::move(states)));
  b->cutoffs_ = cutoffs;
  b->kept_ = {true, true, true, false};
  return b;
}

BasisPtr FockBasis::marginal(const FockBasis& parent, std::array<bool, 4> kept) {
  std::vector<Occupation> states;
  for (const auto& s : parent.states()) {
    Occupation p{};
    for (int k = 0; k < 4; ++k) p[k] = kept[k] ? s[k] : 0;
    states.push_back(p);
  }
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  auto b = std::shared_ptr<FockBasis>(new FockBasis(BasisKind::marginal, std::move(states)));
  b->cutoffs_ = parent.cutoffs();
  b->photon_cutoff_ = kept[3] ? parent.photon_cutoff() : 0;
  for (int k = 0; k < 4; ++k) b->kept_[k] = kept[k] && parent.kept()[k];
  return b;
}

std::optional<std::size_t> FockBasis::find(const Occupation& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockBasis::index(const Occupation& occ) const {
  auto i = find(occ);
  if (!i) throw DomainError("state " + occupation_string(occ) + " is not in the basis");
  return *i;
}

bool FockBasis::operator==(const FockBasis& other) const {
  return kind_ == other.kind_ && kept_ == other.kept_ && states_ == other.states_;
}

BasisPtr build_basis(int atoms, int photon_cutoff) {
  if (atoms < 1) throw DomainError("build_basis: N must be >= 1");
  if (photon_cutoff < 0) throw DomainError("build_basis: n_max must be >= 0");
  return FockBasis::full(atoms, photon_cutoff);
}

// ---------------------------------------------------------------------------

DensityMatrix DensityMatrix::pure(BasisPtr basis, const CVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != basis->size()) throw DomainError("DensityMatrix::pure: size mismatch");
  return {std::move(basis), psi * psi.adjoint()};
}

DensityMatrix DensityMatrix::projector(BasisPtr basis, const Occupation& occ) {
  CVector psi = CVector::Zero(basis->size());
  psi(basis->index(occ)) = 1.0;
  return pure(std::move(basis), psi);
}

DensityCheck DensityMatrix::check(double herm_tol, double trace_tol, double eig_tol) const {
  DensityCheck c;
  c.hermiticity = hermiticity_error(entries);
  c.trace_error = std::abs(entries.trace() - 1.0);
  CMatrix h = 0.5 * (entries + entries.adjoint());
  c.min_eigenvalue = hermitian_eigenvalues(h).minCoeff();
  c.ok = c.hermiticity <= herm_tol && c.trace_error <= trace_tol && c.min_eigenvalue >= -eig_tol;
  return c;
}

void DensityMatrix::validate() const {
  auto c = check();
  if (!c.ok)
    throw DomainError("invalid density matrix: hermiticity " + std::to_string(c.hermiticity) + ", trace error " +
                      std::to_string(c.trace_error) + ", min eigenvalue " + std::to_string(c.min_eigenvalue));
}

// Tr[rho^2] = sum_ij rho_ij rho_ji, which avoids the O(d^3) product.
double DensityMatrix::purity() const { return (entries.array() * entries.transpose().array()).sum().real(); }

// ---------------------------------------------------------------------------

OperatorMatrix mode_annihilator(const BasisPtr& basis, Mode mode) {
  const int slot = static_cast<int>(mode);
  if (slot < 0 || slot > 3) throw DomainError("mode_annihilator: invalid mode");
  if (mode == Mode::photon) {
    if (!basis->has_photon()) throw DomainError("mode_annihilator: basis has no photon slot");
  } else if (!basis->kept()[slot]) {
    throw DomainError("mode_annihilator: slot not present in basis");
  }

  BasisPtr codomain = basis;
  if (mode != Mode::photon && is_fixed_n(*basis)) {
    if (basis->atoms() == 0) throw DomainError("mode_annihilator: no atoms to remove");
    codomain = same_kind_with_atoms(*basis, basis->atoms() - 1);
  }

  CMatrix m = CMatrix::Zero(codomain->size(), basis->size());
  for (std::size_t j = 0; j < basis->size(); ++j) {
    Occupation s = basis->state(j);
    const int occ = s[slot];
    if (occ == 0) continue;
    --s[slot];
    if (auto i = codomain->find(s)) m(*i, j) = std::sqrt(static_cast<double>(occ));
  }
  return {basis, codomain, std::move(m)};
}

OperatorMatrix transfer_operator(const BasisPtr& basis, Mode from, Mode to) {
  const int f = static_cast<int>(from), t = static_cast<int>(to);
  if (from == Mode::photon || to == Mode::photon) throw DomainError("transfer_operator: atomic modes only");
  CMatrix m = CMatrix::Zero(basis->size(), basis->size());
  for (std::size_t j = 0; j < basis->size(); ++j) {
    Occupation s = basis->state(j);
    if (s[f] == 0) continue;
    double amp = std::sqrt(static_cast<double>(s[f]));
    --s[f];
    ++s[t];
    amp *= std::sqrt(static_cast<double>(s[t]));
    if (auto i = basis->find(s)) m(*i, j) += amp;
  }
  return {basis, basis, std::move(m)};
}

OperatorMatrix diagonal_operator(const BasisPtr& basis, const std::array<double, 4>& weights) {
  CMatrix m = CMatrix::Zero(basis->size(), basis->size());
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const auto& s = basis->state(i);
    double v = 0.0;
    for (int k = 0; k < 4; ++k) v += weights[k] * s[k];
    m(i, i) = v;
  }
  return {basis, basis, std::move(m)};
}

OperatorMatrix number_operator(const BasisPtr& basis, Mode mode) {
  std::array<double, 4> w{0, 0, 0, 0};
  w[static_cast<int>(mode)] = 1.0;
  return diagonal_operator(basis, w);
}

OperatorMatrix embed_atomic(const OperatorMatrix& atomic_op, const BasisPtr& full_basis) {
  const auto& ab = *atomic_op.domain;
  if (ab.kind() != BasisKind::atomic || full_basis->kind() != BasisKind::full || ab.atoms() != full_basis->atoms())
    throw DomainError("embed_atomic: expected an atomic operator and a matching full basis");
  CMatrix m = CMatrix::Zero(full_basis->size(), full_basis->size());
  for (std::size_t i = 0; i < full_basis->size(); ++i) {
    const auto& si = full_basis->state(i);
    for (std::size_t j = 0; j < full_basis->size(); ++j) {
      const auto& sj = full_basis->state(j);
      if (si[3] != sj[3]) continue;
      m(i, j) = atomic_op.entries(ab.index({si[0], si[1], si[2], 0}), ab.index({sj[0], sj[1], sj[2], 0}));
    }
  }
  return {full_basis, full_basis, std::move(m)};
}

CVector embed_atomic_state(const BasisPtr& atomic_basis, const CVector& psi, const BasisPtr& full_basis, int photons) {
  CVector out = CVector::Zero(full_basis->size());
  for (std::size_t i = 0; i < atomic_basis->size(); ++i) {
    auto s = atomic_basis->state(i);
    s[3] = photons;
    out(full_basis->index(s)) = psi(i);
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::array<bool, 4> keep) {
  if (std::none_of(keep.begin(), keep.end(), [](bool k) { return k; }))
    throw DomainError("partial_trace: empty keep set");
  const auto& in = *rho.basis;
  BasisPtr out;
  if (in.kind() == BasisKind::full && keep == std::array<bool, 4>{true, true, true, false})
    out = FockBasis::atomic(in.atoms());
  else
    out = FockBasis::marginal(in, keep);

  auto project = [&](Occupation s) {
    for (int k = 0; k < 4; ++k)
      if (!keep[k]) s[k] = 0;
    return s;
  };
  auto traced_equal = [&](const Occupation& a, const Occupation& b) {
    for (int k = 0; k < 4; ++k)
      if (!keep[k] && a[k] != b[k]) return false;
    return true;
  };

  std::vector<std::size_t> target(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) target[i] = out->index(project(in.state(i)));

  CMatrix m = CMatrix::Zero(out->size(), out->size());
  for (std::size_t i = 0; i < in.size(); ++i)
    for (std::size_t j = 0; j < in.size(); ++j)
      if (traced_equal(in.state(i), in.state(j))) m(target[i], target[j]) += rho.entries(i, j);
  return {out, std::move(m)};
}

DensityMatrix trace_out_photon(const DensityMatrix& rho) { return partial_trace(rho, {true, true, true, false}); }

OperatorMatrix partial_transpose(const OperatorMatrix& rho, int slot) {
  if (slot < 0 || slot > 2) throw DomainError("partial_transpose: slot must be 0, 1 or 2");
  if (!rho.square()) throw DomainError("partial_transpose: operator must be square");
  const auto& in = *rho.domain;
  BasisPtr out;
  if (in.kind() == BasisKind::atomic)
    out = FockBasis::product({in.atoms(), in.atoms(), in.atoms()});
  else if (in.kind() == BasisKind::product)
    out = rho.domain;
  else
    throw DomainError("partial_transpose: expected an atomic or product basis");

  CMatrix m = CMatrix::Zero(out->size(), out->size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    for (std::size_t j = 0; j < in.size(); ++j) {
      const Complex v = rho.entries(i, j);
      if (v == Complex{}) continue;
      Occupation bra = in.state(i), ket = in.state(j);
      std::swap(bra[slot], ket[slot]);
      m(out->index(bra), out->index(ket)) += v;
    }
  }
  return {out, out, std::move(m)};
}

OperatorMatrix partial_transpose(const DensityMatrix& rho, int slot) {
  return partial_transpose(OperatorMatrix{rho.basis, rho.basis, rho.entries}, slot);
}

CMatrix embed_in(const OperatorMatrix& op, const FockBasis& target) {
  std::vector<std::size_t> rows(op.codomain->size()), cols(op.domain->size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = target.index(op.codomain->state(i));
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = target.index(op.domain->state(j));
  CMatrix m = CMatrix::Zero(target.size(), target.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(rows[i], cols[j]) = op.entries(i, j);
  return m;
}

}  // namespace cascade
