#include "qhyp/io.hpp"

#include <cmath>
#include <cstdio>

namespace qhyp::io {

nlohmann::json to_json(const ComplexLatticeFunction& f) {
  nlohmann::json support = nlohmann::json::array(), values = nlohmann::json::array();
  for (const auto& [j, v] : f.values()) {
    support.push_back(j);
    values.push_back({v.real(), v.imag()});
  }
  return {{"support", support}, {"values", values}};
}

nlohmann::json to_json(const RealLatticeFunction& f) { return to_json(f.cast<std::complex<double>>()); }

ComplexLatticeFunction lattice_function_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("$", "expected an object");
  if (!j.contains("support")) throw SchemaError("support", "missing");
  if (!j.contains("values")) throw SchemaError("values", "missing");
  const auto& sup = j.at("support");
  const auto& val = j.at("values");
  if (!sup.is_array()) throw SchemaError("support", "expected an array");
  if (!val.is_array()) throw SchemaError("values", "expected an array");
  if (sup.size() != val.size()) throw SchemaError("values", "length differs from support");
  ComplexLatticeFunction::Map out;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    const std::string where = "[" + std::to_string(i) + "]";
    if (!sup[i].is_number_integer()) throw SchemaError("support" + where, "expected an integer");
    const long idx = sup[i].get<long>();
    if (idx < 0) throw SchemaError("support" + where, "negative lattice index");
    if (out.count(static_cast<int>(idx))) throw SchemaError("support" + where, "duplicate index");
    std::complex<double> v;
    if (val[i].is_number()) {
      v = val[i].get<double>();
    } else if (val[i].is_array() && val[i].size() == 2 && val[i][0].is_number() && val[i][1].is_number()) {
      v = {val[i][0].get<double>(), val[i][1].get<double>()};
    } else {
      throw SchemaError("values" + where, "expected [re, im]");
    }
    out.emplace(static_cast<int>(idx), v);
  }
  return ComplexLatticeFunction(std::move(out));
}

nlohmann::json to_json(const JacobiMatrix<double>& J) {
  std::vector<double> d(J.diagonal.data(), J.diagonal.data() + J.diagonal.size());
  std::vector<double> o(J.offdiagonal.data(), J.offdiagonal.data() + J.offdiagonal.size());
  return {{"diag", d}, {"offdiag", o}};
}

nlohmann::json to_json(const SpectralMeasure<double>& mu) {
  nlohmann::json discrete = nlohmann::json::array();
  for (const auto& d : mu.discrete) discrete.push_back({{"z", d.z}, {"mass", d.mass}});
  return {{"theta_nodes", mu.theta},
          {"density", mu.density},
          {"discrete", discrete},
          {"normalization", mu.normalization}};
}

nlohmann::json spectral_header(const Sector& s, const SpectrumDescription& d) {
  return {{"sector", {{"L", s.L}, {"Lp", s.Lp}}}, {"band", {d.band_min, d.band_max}}, {"discrete", d.discrete}};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace qhyp::io
