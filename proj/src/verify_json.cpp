#include "boettcher/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

namespace boettcher {

namespace {

using nlohmann::ordered_json;

ordered_json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

ordered_json integer(const BigInt& v) {
  // Decimal string only when the value leaves the int64 range.
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

ordered_json rational(const Rational& r) {
  ordered_json j;
  j["num"] = integer(r.num());
  j["den"] = integer(r.den());
  return j;
}

ordered_json extended(const ExtendedRational& r) {
  if (!r.is_finite()) return r.str();
  return rational(r.value());
}

ordered_json interval(const IntervalReport& i) {
  ordered_json j;
  j["text"] = i.str();
  j["empty"] = i.empty;
  if (!i.empty) {
    j["lower"] = extended(i.lower);
    j["lower_closed"] = i.lower_closed;
    j["upper"] = extended(i.upper);
    j["upper_closed"] = i.upper_closed;
  }
  return j;
}

ordered_json weights(const WeightReport& r) {
  ordered_json j;
  j["trivial"] = r.trivial;
  j["m_f"] = extended(r.m_f);
  j["alpha_0"] = r.alpha_0 ? rational(*r.alpha_0) : ordered_json("undefined");
  j["interval"] = interval(r.interval);
  j["alpha"] = r.alpha ? rational(*r.alpha) : ordered_json("undefined");
  j["admissibility"] = to_string(r.admissibility);
  j["table_cell"] = r.table_cell;
  j["notes"] = r.notes;
  return j;
}

ordered_json check(const CheckResult& r, bool include_timings) {
  ordered_json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["gating"] = r.gating;
  j["skipped"] = r.skipped;
  j["measured"] = number(r.measured);
  j["bound"] = number(r.bound);
  j["samples"] = r.samples;
  j["dropped"] = r.dropped;
  j["details"] = r.details;
  if (include_timings) j["seconds"] = r.seconds;
  return j;
}

}  // namespace

std::string to_json(const CheckResult& r, bool include_timings) { return check(r, include_timings).dump(2) + "\n"; }

std::string to_json(const WeightReport& r) { return weights(r).dump(2) + "\n"; }

std::string to_json(const VerifyReport& r, bool include_timings) {
  ordered_json j;
  j["germ"] = ordered_json::parse(germ_to_json(r.germ));
  j["description"] = describe(r.germ);
  j["weights"] = weights(r.weights);
  j["case"] = to_string(r.verify_case);
  if (r.domain) {
    ordered_json d;
    d["a"] = rational(r.domain->a);
    d["r1"] = r.domain->r1;
    d["r2"] = r.domain->r2;
    j["domain"] = d;
  }
  j["status"] = r.status;
  j["gates_passed"] = r.gates_passed();
  j["checks"] = ordered_json::array();
  for (const auto& c : r.checks) j["checks"].push_back(check(c, include_timings));
  return j.dump(2) + "\n";
}

}  // namespace boettcher
