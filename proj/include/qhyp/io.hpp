#pragma once

#include <string>

#include <json.hpp>

#include "qhyp/asc.hpp"
#include "qhyp/errors.hpp"
#include "qhyp/laplace.hpp"
#include "qhyp/lattice_function.hpp"
#include "qhyp/spectral.hpp"

namespace qhyp::io {

// Input that does not match a documented schema; `field()` names the culprit.
class SchemaError : public DomainError {
 public:
  SchemaError(std::string field, const std::string& what)
      : DomainError("schema violation at '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// {"support": [j...], "values": [[re, im]...]}; a bare number is accepted as a real value.
nlohmann::json to_json(const ComplexLatticeFunction& f);
nlohmann::json to_json(const RealLatticeFunction& f);
ComplexLatticeFunction lattice_function_from_json(const nlohmann::json& j);

// {"diag": [...], "offdiag": [...]}
nlohmann::json to_json(const JacobiMatrix<double>& J);

// {"theta_nodes": [...], "density": [...], "discrete": [{"z", "mass"}], "normalization"}
nlohmann::json to_json(const SpectralMeasure<double>& mu);

// {"sector": {"L", "Lp"}, "band": [min, max], "discrete": [...]}
nlohmann::json spectral_header(const Sector& s, const SpectrumDescription& d);

// 17 significant digits; parses back to the same double.
std::string format_double(double x);

}  // namespace qhyp::io
