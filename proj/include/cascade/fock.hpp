#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cascade/types.hpp"

namespace cascade {

/// Occupations (n0, n1, n2, n): three atomic momentum modes plus the cavity
/// photon. Bases without a photon slot keep n = 0.
using Occupation = std::array<int, 4>;

enum class Mode : int { c0 = 0, c1 = 1, c2 = 2, photon = 3 };

enum class BasisKind {
  full,      // n0+n1+n2 = N, 0 <= n <= n_max
  atomic,    // n0+n1+n2 = N, no photon
  product,   // 0 <= n_j <= cutoff_j independently, no photon
  marginal,  // projection of another basis onto a subset of slots
};

class FockBasis;
using BasisPtr = std::shared_ptr<const FockBasis>;

/// Enumerated occupation-number basis. States are stored in lexicographic
/// order of (n0, n1, n2, n); the order is part of the serialized format.
class FockBasis {
 public:
  static BasisPtr full(int atoms, int photon_cutoff);
  static BasisPtr atomic(int atoms);
  static BasisPtr product(std::array<int, 3> cutoffs);
  /// Distinct projections of `parent` onto the slots flagged in `kept`;
  /// dropped slots read as zero.
  static BasisPtr marginal(const FockBasis& parent, std::array<bool, 4> kept);

  BasisKind kind() const { return kind_; }
  /// Atom number for full/atomic bases; -1 otherwise.
  int atoms() const { return atoms_; }
  int photon_cutoff() const { return photon_cutoff_; }
  const std::array<int, 3>& cutoffs() const { return cutoffs_; }
  const std::array<bool, 4>& kept() const { return kept_; }
  bool has_photon() const { return kept_[3]; }

  std::size_t size() const { return states_.size(); }
  const Occupation& state(std::size_t i) const { return states_[i]; }
  const std::vector<Occupation>& states() const { return states_; }

  std::optional<std::size_t> find(const Occupation& occ) const;
  /// Throws DomainError when `occ` is not a basis state.
  std::size_t index(const Occupation& occ) const;

  bool operator==(const FockBasis& other) const;

 private:
  FockBasis(BasisKind kind, std::vector<Occupation> states);

  BasisKind kind_;
  int atoms_ = -1;
  int photon_cutoff_ = 0;
  std::array<int, 3> cutoffs_{0, 0, 0};
  std::array<bool, 4> kept_{true, true, true, true};
  std::vector<Occupation> states_;
  std::map<Occupation, std::size_t> index_;
};

BasisPtr build_basis(int atoms, int photon_cutoff);

/// Linear map between two bases (equal for square operators).
struct OperatorMatrix {
  BasisPtr domain;
  BasisPtr codomain;
  CMatrix entries;

  bool square() const { return domain == codomain; }
};

struct DensityCheck {
  double hermiticity = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool ok = false;
};

struct DensityMatrix {
  BasisPtr basis;
  CMatrix entries;

  static DensityMatrix pure(BasisPtr basis, const CVector& psi);
  static DensityMatrix projector(BasisPtr basis, const Occupation& occ);

  DensityCheck check(double herm_tol = 1e-12, double trace_tol = 1e-12, double eig_tol = 1e-10) const;
  /// Throws DomainError if any invariant of check() fails.
  void validate() const;
  double purity() const;
};

/// c_j for an atomic mode maps the N-atom sector into the (N-1)-atom sector
/// of the same kind, so the codomain differs from `basis` unless
/// mode == photon or the basis is a product basis.
OperatorMatrix mode_annihilator(const BasisPtr& basis, Mode mode);

/// c_to^dagger c_from on a fixed-N basis (number conserving).
OperatorMatrix transfer_operator(const BasisPtr& basis, Mode from, Mode to);

/// Diagonal operator n_mode.
OperatorMatrix number_operator(const BasisPtr& basis, Mode mode);

/// Diagonal operator sum_j weights[j] * n_j over all four slots.
OperatorMatrix diagonal_operator(const BasisPtr& basis, const std::array<double, 4>& weights);

/// Embed an atomic operator as op (x) 1_photon on a full basis.
OperatorMatrix embed_atomic(const OperatorMatrix& atomic_op, const BasisPtr& full_basis);

/// Vector psi_atomic (x) |n> on a full basis.
CVector embed_atomic_state(const BasisPtr& atomic_basis, const CVector& psi, const BasisPtr& full_basis,
                           int photons = 0);

DensityMatrix partial_trace(const DensityMatrix& rho, std::array<bool, 4> keep);
DensityMatrix trace_out_photon(const DensityMatrix& rho);

/// Partial transpose on one atomic slot. The swap of bra/ket occupations on
/// a single slot leaves the fixed-N sector, so the result lives on the
/// product basis with cutoff N (or the input cutoffs for product input).
OperatorMatrix partial_transpose(const OperatorMatrix& rho, int slot);
OperatorMatrix partial_transpose(const DensityMatrix& rho, int slot);

/// Re-express an operator on a basis whose states include all of its own.
CMatrix embed_in(const OperatorMatrix& op, const FockBasis& target);

}  // namespace cascade
