#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cascade/dynamics.hpp"
#include "cascade/entanglement.hpp"
#include "cascade/subradiance.hpp"

namespace cascade {

using Json = nlohmann::ordered_json;

/// Basis descriptor: {"kind", "atoms", "photon_cutoff", "cutoffs", "kept",
/// "states": [[n0, n1, n2, n], ...]} with states in basis order.
Json to_json(const FockBasis& basis);
BasisPtr basis_from_json(const Json& j);

/// Complex entries as a flat row-major list of [re, im] pairs.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols);

/// {"domain", "codomain", "rows", "cols", "entries"}.
Json to_json(const OperatorMatrix& op);
OperatorMatrix operator_from_json(const Json& j);

/// {"basis", "dim", "entries"}.
Json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

/// {"N", "p", "epsilon", "amplitudes": [{"occupation", "amplitude": [re, im]}]}.
Json to_json(const SubradiantState& s);

/// {"N", "p", "eps0", "eps1", "alpha", "delta_direct", "delta_printed"}.
Json qubit_pair_json(const QubitPair& pair, const DeltaPReport& report);

Json to_json(const NegativityReport& r);
Json to_json(const NonGaussianity& ng);
Json to_json(const StationaryNonGaussianity& ng);
Json to_json(const CovarianceMatrix& cm);

/// "%.12g"; NaN prints as "nan" and infinities as "inf"/"-inf".
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
  std::string str() const;
};

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const Json& j);
Json read_json(const std::string& path);

}  // namespace cascade
