#include "quadstrata/json_io.hpp"

namespace quadstrata {

Json to_json(const Rational& q) { return rational_to_string(q); }

Json to_json(const GaussianRational& z) {
  return Json{{"re", rational_to_string(z.re)}, {"im", rational_to_string(z.im)}};
}

Json to_json(const StratumSignature& sig) {
  return Json{{"genus", sig.genus},
              {"zeros", sig.zero_orders},
              {"even_poles", sig.even_pole_orders},
              {"odd_poles", sig.odd_pole_orders},
              {"double_poles", sig.double_pole_count}};
}

Json to_json(const RootedResidueConfig& config) {
  Json even = Json::array(), dbl = Json::array();
  for (const auto& r : config.even_pole_roots) even.push_back(to_json(r));
  for (const auto& r : config.double_pole_roots) dbl.push_back(to_json(r));
  return Json{{"even_pole_roots", even}, {"double_pole_roots", dbl}};
}

Rational rational_from_json(const Json& j) {
  if (!j.is_string())
    throw Error(ErrorCode::BadInput, "rationals must be strings of the form \"p/q\"");
  return rational_from_string(j.get<std::string>());
}

GaussianRational gaussian_from_json(const Json& j) {
  if (j.is_string()) return {rational_from_json(j), Rational(0)};
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw Error(ErrorCode::BadInput, "complex numbers must be {\"re\":\"p/q\",\"im\":\"p/q\"}");
  return {rational_from_json(j.at("re")), rational_from_json(j.at("im"))};
}

static std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::BadInput, std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw Error(ErrorCode::BadInput, std::string(what) + " entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

StratumSignature signature_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::BadInput, "signature must be an object");
  StratumSignature sig;
  sig.genus = j.value("genus", 0);
  if (j.contains("zeros")) sig.zero_orders = int_list(j.at("zeros"), "zeros");
  if (j.contains("even_poles")) sig.even_pole_orders = int_list(j.at("even_poles"), "even_poles");
  if (j.contains("odd_poles")) sig.odd_pole_orders = int_list(j.at("odd_poles"), "odd_poles");
  sig.double_pole_count = j.value("double_poles", 0);
  return sig;
}

RootedResidueConfig config_from_json(const Json& j, const StratumSignature& sig) {
  RootedResidueConfig config;
  if (j.is_array()) {
    // Flat root list: even-pole roots first, then double-pole roots.
    if ((int)j.size() != sig.p() + sig.s())
      throw Error(ErrorCode::BadInput, "root list length does not match the signature");
    int i = 0;
    for (; i < sig.p(); ++i) config.even_pole_roots.push_back(gaussian_from_json(j.at(i)));
    for (; i < sig.p() + sig.s(); ++i) config.double_pole_roots.push_back(gaussian_from_json(j.at(i)));
  } else if (j.is_object()) {
    for (const auto& e : j.value("even_pole_roots", Json::array()))
      config.even_pole_roots.push_back(gaussian_from_json(e));
    for (const auto& e : j.value("double_pole_roots", Json::array()))
      config.double_pole_roots.push_back(gaussian_from_json(e));
  } else {
    throw Error(ErrorCode::BadInput, "roots must be an array or an object");
  }
  validate_config(sig, config);
  return config;
}

ComponentSelector component_from_json(const Json& j) {
  if (j.is_null()) return ComponentSelector::whole();
  if (j.is_number_integer()) return ComponentSelector::rotation(j.get<int>());
  if (j.is_string() && j.get<std::string>() == "whole") return ComponentSelector::whole();
  throw Error(ErrorCode::BadInput, "component must be a rotation number or \"whole\"");
}

}  // namespace quadstrata
