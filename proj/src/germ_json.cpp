#include "boettcher/germ.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>

namespace boettcher {

using nlohmann::json;

namespace {

int read_exponent(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    const auto e = v.get<long long>();
    if (e < 0 || e > 1024) throw GermError(where + ": exponent out of range [0, 1024]");
    return static_cast<int>(e);
  }
  if (v.is_number_float()) {
    const double e = v.get<double>();
    if (std::floor(e) != e) throw GermError(where + ": exponents must be integers");
    return read_exponent(json(static_cast<long long>(e)), where);
  }
  throw GermError(where + ": exponent is not a number");
}

double read_coeff(const json& v, const std::string& where) {
  if (!v.is_number()) throw GermError(where + ": coefficient part is not a number");
  return v.get<double>();
}

std::vector<Monomial> read_terms(const json& arr, const std::string& key, std::size_t arity) {
  if (!arr.is_array()) throw GermError(key + ": expected an array of terms");
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& t = arr[i];
    const std::string where = key + "[" + std::to_string(i) + "]";
    if (!t.is_array() || t.size() != arity)
      throw GermError(where + ": expected " + std::to_string(arity) + " entries");
    Monomial m;
    m.coeff = Complex(read_coeff(t[0], where), read_coeff(t[1], where));
    m.n = read_exponent(t[2], where);
    m.m = arity == 4 ? read_exponent(t[3], where) : 0;
    out.push_back(m);
  }
  return out;
}

json write_terms(const std::vector<Monomial>& terms, bool with_m) {
  json arr = json::array();
  for (const auto& t : terms) {
    json e = json::array({t.coeff.real(), t.coeff.imag(), t.n});
    if (with_m) e.push_back(t.m);
    arr.push_back(std::move(e));
  }
  return arr;
}

}  // namespace

Germ parse_germ(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw GermError(std::string("malformed germ document: ") + e.what());
  }
  if (!doc.is_object()) throw GermError("malformed germ document: top level must be an object");
  for (const auto& [key, _] : doc.items())
    if (key != "delta" && key != "p_tail" && key != "p_general" && key != "q" && key != "name" &&
        key != "comment")
      throw GermError("malformed germ document: unknown field \"" + key + "\"");
  if (!doc.contains("delta") || !doc["delta"].is_number_integer())
    throw GermError("malformed germ document: \"delta\" must be an integer");
  if (!doc.contains("q")) throw GermError("malformed germ document: \"q\" is required");

  const long long delta = doc["delta"].get<long long>();
  if (delta < 2) throw GermError("delta must be >= 2");
  if (delta > 1024) throw GermError("delta out of range");

  auto q = read_terms(doc["q"], "q", 4);
  if (doc.contains("p_general")) {
    if (doc.contains("p_tail") && !doc["p_tail"].empty())
      throw GermError("p_tail and p_general are mutually exclusive");
    return Germ::general(static_cast<int>(delta), read_terms(doc["p_general"], "p_general", 4), std::move(q));
  }
  std::vector<Monomial> tail;
  if (doc.contains("p_tail")) tail = read_terms(doc["p_tail"], "p_tail", 3);
  return Germ::skew(static_cast<int>(delta), std::move(tail), std::move(q));
}

std::string germ_to_json(const Germ& f) {
  json doc;
  doc["delta"] = f.delta();
  if (f.is_general())
    doc["p_general"] = write_terms(f.p_terms(), true);
  else
    doc["p_tail"] = write_terms(f.p_terms(), false);
  doc["q"] = write_terms(f.q_terms(), true);
  return doc.dump();
}

}  // namespace boettcher
