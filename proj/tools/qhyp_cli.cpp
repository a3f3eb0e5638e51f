// qhyp: verification battery and spectral data export.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qhyp/checks.hpp"
#include "qhyp/io.hpp"
#include "qhyp/qhyp.hpp"
#include "qhyp/verify.hpp"

using qhyp::io::format_double;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

class Csv {
 public:
  explicit Csv(const std::string& header) { os_ << header << "\n"; }
  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
    os_ << "\n";
  }
  std::string str() const { return os_.str(); }

 private:
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(bool b) { return b ? "true" : "false"; }
  std::ostringstream os_;
};

int cmd_verify(const qhyp::RunConfig& c, const Output& out) {
  const auto report = qhyp::run_verification(c);
  if (c.format == "json") {
    out.write(dump(report.to_json(c)));
  } else {
    Csv csv("name,residual,threshold,pass");
    for (const auto& r : report.checks) csv.row(r.name, r.residual, r.threshold, r.pass);
    out.write(csv.str());
  }
  if (const auto* f = report.first_failure()) {
    std::cerr << "verify: check failed: " << f->name << " (residual " << format_double(f->residual)
              << " > threshold " << format_double(f->threshold) << ")\n";
    return kExitFail;
  }
  return kExitPass;
}

int cmd_spectrum(const qhyp::RunConfig& c, int size, const Output& out) {
  if (size < 2) throw qhyp::DomainError("size must be >= 2");
  const auto p = c.params();
  const auto s = c.sector();
  const auto d = qhyp::spectrum_description(p, s);
  const auto J = qhyp::jacobi_matrix<double>(p, s, size);
  const Eigen::VectorXd ev = qhyp::truncated_eigenvalues(p, s, size);
  if (c.format == "json") {
    json j = qhyp::io::spectral_header(s, d);
    j["schema_version"] = 1;
    j["size"] = size;
    j["jacobi"] = qhyp::io::to_json(J);
    j["eigenvalues"] = std::vector<double>(ev.data(), ev.data() + ev.size());
    out.write(dump(j));
  } else {
    Csv csv("kind,index,value");
    csv.row("band_min", 0, d.band_min);
    csv.row("band_max", 0, d.band_max);
    for (std::size_t k = 0; k < d.discrete.size(); ++k) csv.row("discrete", k, d.discrete[k]);
    for (Eigen::Index i = 0; i < J.diagonal.size(); ++i) csv.row("diag", int(i), J.diagonal(i));
    for (Eigen::Index i = 0; i < J.offdiagonal.size(); ++i) csv.row("offdiag", int(i), J.offdiagonal(i));
    for (Eigen::Index i = 0; i < ev.size(); ++i) csv.row("eigenvalue", int(i), ev(i));
    out.write(csv.str());
  }
  return kExitPass;
}

int cmd_plancherel(const qhyp::RunConfig& c, const Output& out) {
  const auto p = c.params();
  const auto s = c.sector();
  const auto d = qhyp::spectrum_description(p, s);
  const auto mu = qhyp::plancherel_measure(p, s, c.quad_nodes);
  std::vector<double> value(mu.node_count());
  for (std::size_t i = 0; i < mu.node_count(); ++i) value[i] = mu.normalization * mu.density[i];
  const double total = mu.total_mass();
  if (c.format == "json") {
    json j = qhyp::io::spectral_header(s, d);
    j["schema_version"] = 1;
    j["density"] = {{"theta", mu.theta}, {"value", value}};
    j["measure"] = qhyp::io::to_json(mu);
    j["total_mass"] = total;
    out.write(dump(j));
  } else {
    Csv csv("kind,index,x,value");
    for (std::size_t i = 0; i < mu.node_count(); ++i) csv.row("density", i, mu.theta[i], value[i]);
    for (std::size_t k = 0; k < mu.discrete_count(); ++k) csv.row("discrete", k, mu.discrete[k].z, mu.discrete_weight(k));
    csv.row("total_mass", 0, 0.0, total);
    out.write(csv.str());
  }
  const bool ok = std::abs(total - 1.0) <= c.tol.value_or(1e-10);
  if (!ok) std::cerr << "plancherel: total mass " << format_double(total) << " differs from 1\n";
  return ok ? kExitPass : kExitFail;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw qhyp::io::SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
}

int cmd_transform(const qhyp::RunConfig& c, const std::string& input, const Output& out) {
  const auto p = c.params();
  const auto s = c.sector();
  const auto f = qhyp::io::lattice_function_from_json(read_json_file(input));
  const int jmax = f.empty() ? 0 : f.max_index();
  const qhyp::SpectralTransform T(p, s, jmax, c.quad_nodes);
  const auto fhat = T.forward(f);
  const auto back = T.inverse(fhat);
  const auto& mu = T.measure();
  const auto nc = static_cast<Eigen::Index>(mu.node_count());
  auto value_at = [&](Eigen::Index r) { return r < nc ? fhat.nodes[r] : fhat.discrete[r - nc]; };

  if (c.format == "json") {
    json samples = json::array(), discrete = json::array();
    for (Eigen::Index r = 0; r < T.rows(); ++r) {
      const auto v = value_at(r);
      json e = {{"z", T.z_at(r)}, {"lambda", qhyp::eigenvalue_lambda_z(p, T.z_at(r))}, {"value", {v.real(), v.imag()}}};
      if (r < nc) {
        e["theta"] = mu.theta[r];
        samples.push_back(e);
      } else {
        e["k"] = mu.discrete[r - nc].k;
        discrete.push_back(e);
      }
    }
    json j = {{"schema_version", 1},
              {"sector", {{"L", s.L}, {"Lp", s.Lp}}},
              {"samples", samples},
              {"discrete", discrete},
              {"round_trip", qhyp::io::to_json(back)}};
    out.write(dump(j));
  } else {
    Csv csv("kind,index,x,lambda,re,im");
    for (Eigen::Index r = 0; r < T.rows(); ++r) {
      const auto v = value_at(r);
      const double lam = qhyp::eigenvalue_lambda_z(p, T.z_at(r));
      if (r < nc)
        csv.row("continuous", int(r), mu.theta[r], lam, v.real(), v.imag());
      else
        csv.row("discrete", mu.discrete[r - nc].k, T.z_at(r), lam, v.real(), v.imag());
    }
    out.write(csv.str());
  }
  return kExitPass;
}

int cmd_oracle(const qhyp::RunConfig& c, const std::vector<int>& quad, const std::string& input, int depth,
               const Output& out) {
  const auto p = c.params();
  const qhyp::Quadruple t{quad[0], quad[1], quad[2], quad[3]};
  if (!t.nonnegative()) throw qhyp::DomainError("quadruple entries must be nonnegative");
  qhyp::RealLatticeFunction phi = qhyp::RealLatticeFunction::indicator(0);
  if (!input.empty()) {
    const auto cf = qhyp::io::lattice_function_from_json(read_json_file(input));
    qhyp::RealLatticeFunction::Map real;
    for (const auto& [j, v] : cf.values()) {
      if (v.imag() != 0.0) throw qhyp::io::SchemaError("values", "the oracle takes real-valued functions");
      real.emplace(j, v.real());
    }
    phi = qhyp::RealLatticeFunction(std::move(real));
  }
  const auto r = qhyp::checks::oracle_comparison(p, t, phi, phi, depth);
  const double threshold = c.tol.value_or(1e-9);
  const bool ok = r.rel_err <= threshold;
  if (c.format == "json") {
    json j = {{"schema_version", 1}, {"quadruple", quad}, {"oracle", r.oracle}, {"closed_form", r.closed_form},
              {"rel_err", r.rel_err}, {"depth", r.depth}, {"pass", ok}};
    out.write(dump(j));
  } else {
    Csv csv("k,l,kp,lp,oracle,closed_form,rel_err,depth,pass");
    csv.row(quad[0], quad[1], quad[2], quad[3], r.oracle, r.closed_form, r.rel_err, r.depth, ok);
    out.write(csv.str());
  }
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral toolkit for the quantum Laplace-Beltrami operator on q-hyperbolic spaces"};
  app.require_subcommand(1);

  qhyp::RunConfig c;
  double tol = 0.0;
  Output out;
  app.add_option("--q", c.q, "deformation parameter, 0 < q <= 0.95")->capture_default_str();
  app.add_option("--n", c.n, "n >= 1")->capture_default_str();
  app.add_option("--m", c.m, "m >= 2")->capture_default_str();
  app.add_option("--lambda", c.L, "sector label Lambda")->capture_default_str();
  app.add_option("--lambda-prime", c.Lp, "sector label Lambda'")->capture_default_str();
  app.add_option("--max-j", c.max_j, "largest lattice index in eigenfunction checks")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol, "replace every check threshold");
  app.add_option("--quad-nodes", c.quad_nodes, "initial trapezoid intervals (>= 16)")->capture_default_str();
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--seed", c.seed, "seed of the random test functions")->capture_default_str();
  app.add_option("--out", out.path, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the property battery, exit 1 on any failed check");
  auto* spectrum = app.add_subcommand("spectrum", "band, discrete eigenvalues and truncated Jacobi spectrum");
  int size = 400;
  spectrum->add_option("--size", size, "Jacobi truncation size")->capture_default_str();
  auto* plancherel = app.add_subcommand("plancherel", "Plancherel density and point masses");
  auto* transform = app.add_subcommand("transform", "spectral transform of a lattice function");
  std::string input;
  transform->add_option("--in", input, "lattice function JSON {\"support\", \"values\"}")->required();
  auto* oracle = app.add_subcommand("oracle", "Fock-trace oracle against the closed form");
  std::vector<int> quad{0, 0, 0, 0};
  int depth = 40;
  oracle->add_option("--quadruple", quad, "k l k' l'")->expected(4);
  oracle->add_option("--in", input, "lattice function JSON used for phi = psi (default f_0)");
  oracle->add_option("--depth", depth, "initial truncation depth")->capture_default_str();
  for (auto* sub : {verify, spectrum, plancherel, transform, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (*tol_opt) c.tol = tol;

  try {
    qhyp::validate(c);
    if (*verify) return cmd_verify(c, out);
    if (*spectrum) return cmd_spectrum(c, size, out);
    if (*plancherel) return cmd_plancherel(c, out);
    if (*transform) return cmd_transform(c, input, out);
    if (*oracle) return cmd_oracle(c, quad, input, depth, out);
  } catch (const qhyp::io::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qhyp::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
