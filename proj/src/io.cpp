#include "cascade/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cascade {

namespace {

const char* kind_name(BasisKind k) {
  switch (k) {
    case BasisKind::full: return "full";
    case BasisKind::atomic: return "atomic";
    case BasisKind::product: return "product";
    case BasisKind::marginal: return "marginal";
  }
  return "?";
}

Json pair(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const FockBasis& basis) {
  Json j;
  j["kind"] = kind_name(basis.kind());
  j["atoms"] = basis.atoms();
  j["photon_cutoff"] = basis.photon_cutoff();
  j["cutoffs"] = basis.cutoffs();
  j["kept"] = basis.kept();
  Json states = Json::array();
  for (const auto& s : basis.states()) states.push_back(s);
  j["states"] = std::move(states);
  return j;
}

BasisPtr basis_from_json(const Json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    BasisPtr b;
    if (kind == "full") {
      b = FockBasis::full(j.at("atoms").get<int>(), j.at("photon_cutoff").get<int>());
    } else if (kind == "atomic") {
      b = FockBasis::atomic(j.at("atoms").get<int>());
    } else if (kind == "product") {
      b = FockBasis::product(j.at("cutoffs").get<std::array<int, 3>>());
    } else {
      throw DomainError("basis_from_json: marginal bases are not reconstructible");
    }
    const auto states = j.at("states").get<std::vector<Occupation>>();
    if (states != b->states()) throw DomainError("basis_from_json: state list does not match the canonical order");
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("basis_from_json: ") + e.what());
  }
}

Json matrix_to_json(const CMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(pair(m(r, c)));
  return entries;
}

CMatrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols)
    throw DomainError("matrix_from_json: entry count does not match the shape");
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = j[static_cast<std::size_t>(r * cols + c)];
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

Json to_json(const OperatorMatrix& op) {
  Json j;
  j["domain"] = to_json(*op.domain);
  j["codomain"] = to_json(*op.codomain);
  j["rows"] = op.entries.rows();
  j["cols"] = op.entries.cols();
  j["entries"] = matrix_to_json(op.entries);
  return j;
}

OperatorMatrix operator_from_json(const Json& j) {
  OperatorMatrix op;
  op.domain = basis_from_json(j.at("domain"));
  op.codomain = *basis_from_json(j.at("codomain")) == *op.domain ? op.domain : basis_from_json(j.at("codomain"));
  op.entries = matrix_from_json(j.at("entries"), j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
  if (static_cast<std::size_t>(op.entries.rows()) != op.codomain->size() ||
      static_cast<std::size_t>(op.entries.cols()) != op.domain->size())
    throw DomainError("operator_from_json: shape does not match the bases");
  return op;
}

Json to_json(const DensityMatrix& rho) {
  Json j;
  j["basis"] = to_json(*rho.basis);
  j["dim"] = rho.entries.rows();
  j["entries"] = matrix_to_json(rho.entries);
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  DensityMatrix rho;
  rho.basis = basis_from_json(j.at("basis"));
  const auto d = static_cast<Eigen::Index>(rho.basis->size());
  rho.entries = matrix_from_json(j.at("entries"), d, d);
  return rho;
}

Json to_json(const SubradiantState& s) {
  Json j;
  j["N"] = s.atoms;
  j["p"] = s.p;
  j["epsilon"] = s.epsilon;
  Json amps = Json::array();
  for (std::size_t i = 0; i < s.basis->size(); ++i) {
    const auto& o = s.basis->state(i);
    amps.push_back({{"occupation", std::array<int, 3>{o[0], o[1], o[2]}}, {"amplitude", pair(s.amplitudes(i))}});
  }
  j["amplitudes"] = std::move(amps);
  return j;
}

Json qubit_pair_json(const QubitPair& pair, const DeltaPReport& report) {
  return Json{{"N", pair.atoms},
              {"p", pair.p},
              {"eps0", pair.eps0},
              {"eps1", pair.eps1},
              {"alpha", pair.alpha},
              {"delta_direct", report.delta_direct},
              {"delta_printed", report.delta_printed}};
}

Json to_json(const NegativityReport& r) {
  Json j;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["min_per_slot"] = r.min_per_slot;
  j["negative_eigenvalues"] = r.negative;
  j["fully_inseparable"] = r.fully_inseparable;
  return j;
}

Json to_json(const NonGaussianity& ng) {
  return Json{{"delta", ng.delta}, {"mu_rho", ng.purity}, {"mu_tau", ng.reference_purity}, {"overlap", ng.overlap}};
}

Json to_json(const StationaryNonGaussianity& ng) {
  return Json{{"delta_direct", ng.delta_direct},
              {"delta_printed", ng.delta_printed},
              {"mu_rho", ng.mu_rho},
              {"mu_tau", ng.mu_tau},
              {"occupations", ng.occupations},
              {"overlap_ground_direct", ng.direct.ground},
              {"overlap_ground_printed", ng.printed.ground},
              {"overlap_sr_direct", ng.direct.subradiant},
              {"overlap_sr_printed", ng.printed.subradiant}};
}

Json to_json(const CovarianceMatrix& cm) {
  Json sigma = Json::array();
  for (int r = 0; r < 6; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 6; ++c) row.push_back(cm.sigma(r, c));
    sigma.push_back(std::move(row));
  }
  Json mean = Json::array();
  for (int r = 0; r < 6; ++r) mean.push_back(cm.mean(r));
  // sigma_thermal = N + 1/2: twice the "(N + 1/2)/2" normalization.
  return Json{{"sigma", sigma}, {"mean", mean}, {"convention", "q=(c+c^dag)/sqrt2, vacuum variance 1/2"},
              {"rescale_vs_printed", 2.0}};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_number(v));
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error("write failed: " + path);
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return Json::parse(f);
}

}  // namespace cascade
