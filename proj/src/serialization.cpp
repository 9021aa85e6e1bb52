#include "mopuc/serialization.hpp"

#include <cstdio>

#include "mopuc/errors.hpp"

namespace mopuc {

using nlohmann::json;

namespace {

json entries_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return entries;
}

ComplexMatrix entries_from_json(const json& entries, Index dim) {
  if (!entries.is_array() || static_cast<Index>(entries.size()) != dim * dim)
    throw BadConfig("matrix entry list must hold dim^2 [re, im] pairs");
  ComplexMatrix m(dim, dim);
  Index k = 0;
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j, ++k)
      m(i, j) = Complex(entries[k].at(0).get<double>(), entries[k].at(1).get<double>());
  return m;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace

json matrix_to_json(const ComplexMatrix& m) {
  return json{{"dim", m.rows()}, {"entries", entries_to_json(m)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const Index dim = j.at("dim").get<Index>();
  return entries_from_json(j.at("entries"), dim);
}

json verblunsky_to_json(const VerblunskySequence& alpha) {
  json coeffs = json::array();
  for (int k = 0; k < alpha.size(); ++k) coeffs.push_back(entries_to_json(alpha[k]));
  return json{{"dim", alpha.dim()}, {"coeffs", coeffs}};
}

VerblunskySequence verblunsky_from_json(const json& j) {
  const Index dim = j.at("dim").get<Index>();
  std::vector<ComplexMatrix> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(entries_from_json(c, dim));
  return VerblunskySequence(dim, std::move(coeffs));
}

bool is_builtin_measure_name(const std::string& name) {
  return name == "lambda0" || name.rfind("lambda_g:", 0) == 0;
}

MatrixMeasure builtin_measure(const std::string& name, Index dim, Index grid_size) {
  if (name == "lambda0") return MatrixMeasure::lebesgue(dim, grid_size);
  if (name.rfind("lambda_g:", 0) == 0) {
    const double g = std::stod(name.substr(9));
    return MatrixMeasure::gross_witten(ReferenceWeight(g), dim, grid_size);
  }
  throw BadConfig("unknown builtin measure '" + name + "'");
}

json measure_to_json(const MatrixMeasure& mu) {
  json density = json::array();
  for (Index j = 0; j < mu.grid_size(); ++j) density.push_back(entries_to_json(mu.density(j)));
  json atoms = json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back({{"theta", a.theta}, {"weight", entries_to_json(a.weight)}});
  return json{{"dim", mu.dim()},
              {"grid_size", mu.grid_size()},
              {"density", density},
              {"atoms", atoms}};
}

MatrixMeasure measure_from_json(const json& j) {
  const Index dim = j.at("dim").get<Index>();
  const Index grid_size = j.at("grid_size").get<Index>();
  const json& density = j.at("density");
  if (density.is_string()) {
    MatrixMeasure base = builtin_measure(density.get<std::string>(), dim, grid_size);
    if (!j.contains("atoms") || j.at("atoms").empty()) return base;
    // Builtin density plus atoms: renormalize the combination.
    std::vector<ComplexMatrix> samples(base.density());
    std::vector<MeasureAtom> atoms;
    for (const auto& a : j.at("atoms"))
      atoms.push_back({a.at("theta").get<double>(),
                       entries_from_json(a.at("weight"), dim)});
    return MatrixMeasure(std::move(samples), std::move(atoms), Normalization::Renormalize);
  }
  std::vector<ComplexMatrix> samples;
  samples.reserve(density.size());
  for (const auto& w : density) samples.push_back(entries_from_json(w, dim));
  std::vector<MeasureAtom> atoms;
  if (j.contains("atoms"))
    for (const auto& a : j.at("atoms"))
      atoms.push_back({a.at("theta").get<double>(),
                       entries_from_json(a.at("weight"), dim)});
  const bool renorm = j.value("renormalize", false);
  return MatrixMeasure(std::move(samples), std::move(atoms),
                       renorm ? Normalization::Renormalize : Normalization::Require);
}

json report_to_json(const SumRuleReport& r) {
  return json{{"g", r.g},
              {"p", r.p},
              {"n_trunc", r.n_trunc},
              {"grid_size", r.grid_size},
              {"lhs_integral", r.lhs_integral},
              {"rhs_series", r.rhs_series},
              {"residual", r.residual},
              {"entropy_lhs", r.entropy_lhs},
              {"entropy_rhs", r.entropy_rhs},
              {"T", r.T_value},
              {"T_alt", r.T_alt_value},
              {"lhs_clamped", r.lhs_clamped},
              {"entropy_infinite", r.entropy_infinite},
              {"gem_sum_i", r.gems.sum_i},
              {"gem_sum_ii", r.gems.sum_ii},
              {"gem_sum_iii", r.gems.sum_iii},
              {"gem_governing", r.gems.governing}};
}

std::string report_csv_header() {
  return "# mopuc-report-v1: g,p,N,lhs,rhs,residual,T,gem_i,gem_ii,gem_iii";
}

std::string report_csv_row(const SumRuleReport& r) {
  const auto last = [](const std::vector<double>& v) { return v.empty() ? 0.0 : v.back(); };
  std::string row;
  row += fmt(r.g) + ",";
  row += std::to_string(r.p) + ",";
  row += std::to_string(r.n_trunc) + ",";
  row += fmt(r.lhs_integral) + ",";
  row += fmt(r.rhs_series) + ",";
  row += fmt(r.residual) + ",";
  row += fmt(r.T_value) + ",";
  row += fmt(last(r.gems.sum_i)) + ",";
  row += fmt(last(r.gems.sum_ii)) + ",";
  row += fmt(last(r.gems.sum_iii));
  return row;
}

} // namespace mopuc
