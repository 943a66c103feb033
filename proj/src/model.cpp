#include "waveflow/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "waveflow/errors.hpp"

namespace waveflow {

using nlohmann::json;

const char* to_string(Polarization p) noexcept { return p == Polarization::H ? "H" : "V"; }

ArrayConfig ArrayConfig::uniform(std::size_t m, double beta_h, double beta_v, double kappa_h,
                                 double kappa_v) {
  ArrayConfig cfg;
  cfg.num_guides = m;
  cfg.beta_h.assign(m, beta_h);
  cfg.beta_v.assign(m, beta_v);
  cfg.kappa_h.assign(m > 0 ? m - 1 : 0, kappa_h);
  cfg.kappa_v.assign(m > 0 ? m - 1 : 0, kappa_v);
  cfg.alpha_x.assign(m, 0.0);
  cfg.alpha_y.assign(m, 0.0);
  return cfg;
}

namespace {

void check_field(const std::vector<double>& v, std::size_t expected, const char* field) {
  if (v.size() != expected) {
    throw Error(ErrorKind::ConfigInvalid, std::string("field '") + field + "' has " +
                                              std::to_string(v.size()) + " entries, expected " +
                                              std::to_string(expected));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorKind::ConfigInvalid, std::string("field '") + field + "[" +
                                                std::to_string(i) + "]' is not finite");
    }
  }
}

}  // namespace

void ArrayConfig::validate() const {
  if (num_guides < 1) throw Error(ErrorKind::ConfigInvalid, "field 'num_guides' must be >= 1");
  check_field(beta_h, num_guides, "beta_H");
  check_field(beta_v, num_guides, "beta_V");
  check_field(kappa_h, num_guides - 1, "kappa_H");
  check_field(kappa_v, num_guides - 1, "kappa_V");
  check_field(alpha_x, num_guides, "alpha_x");
  check_field(alpha_y, num_guides, "alpha_y");
}

bool ArrayConfig::is_diagonal() const noexcept {
  for (double a : alpha_x)
    if (a != 0.0) return false;
  for (double a : alpha_y)
    if (a != 0.0) return false;
  return true;
}

ArrayConfig reference_five_guide() {
  ArrayConfig cfg = ArrayConfig::uniform(5, 1.0, 1.2, 1.0, 1.5);
  cfg.name = kReferenceName;
  return cfg;
}

ComplexMatrix pauli_x() {
  ComplexMatrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

ComplexMatrix pauli_y() {
  ComplexMatrix s(2, 2);
  s << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return s;
}

ComplexMatrix pauli_z() {
  ComplexMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

HermitianMatrix effective_env_generator(const ArrayConfig& cfg, Polarization pol) {
  cfg.validate();
  const auto m = static_cast<Index>(cfg.num_guides);
  const auto& beta = pol == Polarization::H ? cfg.beta_h : cfg.beta_v;
  const auto& kappa = pol == Polarization::H ? cfg.kappa_h : cfg.kappa_v;
  ComplexMatrix g = ComplexMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) g(i, i) = beta[static_cast<std::size_t>(i)];
  for (Index i = 0; i + 1 < m; ++i) {
    g(i, i + 1) = kappa[static_cast<std::size_t>(i)];
    g(i + 1, i) = kappa[static_cast<std::size_t>(i)];
  }
  return HermitianMatrix(g);
}

namespace {

ComplexMatrix projector(Index dim, Index k) {
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  p(k, k) = 1.0;
  return p;
}

}  // namespace

JointHamiltonian build_h0(const ArrayConfig& cfg) {
  const auto m = static_cast<Index>(cfg.num_guides);
  const ComplexMatrix gen_h = effective_env_generator(cfg, Polarization::H).matrix();
  const ComplexMatrix gen_v = effective_env_generator(cfg, Polarization::V).matrix();
  const ComplexMatrix h = tensor(projector(2, 0), gen_h) + tensor(projector(2, 1), gen_v);
  return {HermitianMatrix(h), 2, m};
}

JointHamiltonian build_h1(const ArrayConfig& cfg) {
  JointHamiltonian h0 = build_h0(cfg);
  const auto m = static_cast<Index>(cfg.num_guides);
  ComplexMatrix h = h0.matrix.matrix();
  const ComplexMatrix sx = pauli_x();
  const ComplexMatrix sy = pauli_y();
  for (Index g = 0; g < m; ++g) {
    const auto k = static_cast<std::size_t>(g);
    const ComplexMatrix rot = cfg.alpha_x[k] * sx + cfg.alpha_y[k] * sy;
    h += tensor(rot, projector(m, g));
  }
  return {HermitianMatrix(h), 2, m};
}

JointHamiltonian build_hamiltonian(const ArrayConfig& cfg) {
  return cfg.is_diagonal() ? build_h0(cfg) : build_h1(cfg);
}

// ---- config files --------------------------------------------------------

namespace {

std::vector<double> read_list(const json& j, const std::string& context, const char* field,
                              std::size_t expected, bool optional) {
  if (!j.contains(field)) {
    if (optional) return std::vector<double>(expected, 0.0);
    throw Error(ErrorKind::ConfigInvalid, context + ": missing field '" + field + "'");
  }
  const json& v = j.at(field);
  if (v.is_number()) return std::vector<double>(expected, v.get<double>());
  if (!v.is_array()) {
    throw Error(ErrorKind::ConfigInvalid,
                context + ": field '" + field + "' must be a number or an array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw Error(ErrorKind::ConfigInvalid, context + ": field '" + field + "[" +
                                                std::to_string(i) + "]' is not a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

ArrayConfig array_config_from_json(const json& j, const std::string& context) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigInvalid, context + ": expected an object");
  static const char* const known[] = {"name",    "num_guides", "beta_H",  "beta_V",
                                      "kappa_H", "kappa_V",    "alpha_x", "alpha_y"};
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw Error(ErrorKind::ConfigInvalid, context + ": unknown field '" + key + "'");
  }
  if (!j.contains("num_guides") || !j.at("num_guides").is_number_integer() ||
      j.at("num_guides").get<long long>() < 1) {
    throw Error(ErrorKind::ConfigInvalid,
                context + ": field 'num_guides' must be an integer >= 1");
  }
  ArrayConfig cfg;
  cfg.name = j.value("name", std::string{});
  cfg.num_guides = j.at("num_guides").get<std::size_t>();
  const std::size_t m = cfg.num_guides;
  cfg.beta_h = read_list(j, context, "beta_H", m, false);
  cfg.beta_v = read_list(j, context, "beta_V", m, false);
  cfg.kappa_h = read_list(j, context, "kappa_H", m - 1, m == 1);
  cfg.kappa_v = read_list(j, context, "kappa_V", m - 1, m == 1);
  cfg.alpha_x = read_list(j, context, "alpha_x", m, true);
  cfg.alpha_y = read_list(j, context, "alpha_y", m, true);
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigInvalid, context + ": " + e.message());
  }
  return cfg;
}

json to_json(const ArrayConfig& cfg) {
  json j;
  if (!cfg.name.empty()) j["name"] = cfg.name;
  j["num_guides"] = cfg.num_guides;
  j["beta_H"] = cfg.beta_h;
  j["beta_V"] = cfg.beta_v;
  j["kappa_H"] = cfg.kappa_h;
  j["kappa_V"] = cfg.kappa_v;
  j["alpha_x"] = cfg.alpha_x;
  j["alpha_y"] = cfg.alpha_y;
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigInvalid, path.string() + ": " + e.what());
  }
}

ArrayConfig load_array_config(const std::filesystem::path& path) {
  return array_config_from_json(read_json_file(path), path.string());
}

}  // namespace waveflow
