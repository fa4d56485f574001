#pragma once

// JSON instance documents and report helpers.
//
//   { "N": 1, "T": 3, "storage_cost": "0", "mode": "single",
//     "decay": {"kind": "cliff", "d": 2},
//     "values": [["1"], ["1"], ["1000"]] }
//
// Amounts are decimal strings (integers are accepted too); binary floats
// are rejected so that every value is ingested exactly.

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <string_view>

#include "shelfprice/model.hpp"

namespace shelfprice {

namespace detail {

inline Money money_from_json(const nlohmann::json& j, const std::string& what) {
  try {
    if (j.is_string()) return Money::parse(j.get<std::string>());
    if (j.is_number_integer()) return Money::units(j.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw InstanceError(what + ": " + e.what());
  }
  throw InstanceError(what + ": expected a decimal string");
}

inline Fraction fraction_from_json(const nlohmann::json& j, const std::string& what) {
  try {
    if (j.is_string()) return Fraction::parse(j.get<std::string>());
    if (j.is_number_integer()) return Fraction::from_raw(j.get<std::int64_t>() * Fraction::denominator);
  } catch (const std::invalid_argument& e) {
    throw InstanceError(what + ": " + e.what());
  }
  throw InstanceError(what + ": expected a decimal string");
}

inline int int_field(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) throw InstanceError(std::string("missing integer field '") + key + "'");
  return doc[key].get<int>();
}

inline DecayProfile decay_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw InstanceError("decay: missing 'kind'");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "cliff") return DecayProfile::cliff(int_field(j, "d"));
  if (kind == "fractional") {
    if (!j.contains("r")) throw InstanceError("decay: fractional profile needs 'r'");
    return DecayProfile::fractional(int_field(j, "d"), fraction_from_json(j["r"], "decay.r"));
  }
  if (kind == "step") {
    if (!j.contains("r") || !j["r"].is_array()) throw InstanceError("decay: step profile needs an 'r' list");
    std::vector<Fraction> levels;
    for (const auto& r : j["r"]) levels.push_back(fraction_from_json(r, "decay.r"));
    return DecayProfile::step(std::move(levels));
  }
  throw InstanceError("decay: unknown kind '" + kind + "'");
}

}  // namespace detail

inline Instance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InstanceError("instance document must be an object");
  const int units = detail::int_field(doc, "N");
  const int days = detail::int_field(doc, "T");
  if (units <= 0 || days <= 0) throw InstanceError("N and T must be positive");

  BuyerMode mode = BuyerMode::single;
  if (doc.contains("mode")) {
    const auto m = doc["mode"].get<std::string>();
    if (m == "multi") mode = BuyerMode::multi;
    else if (m != "single") throw InstanceError("mode must be 'single' or 'multi'");
  }
  const Money cost = doc.contains("storage_cost") ? detail::money_from_json(doc["storage_cost"], "storage_cost") : Money{};
  if (cost < Money{}) throw InstanceError("storage cost must be non-negative");
  if (!doc.contains("decay")) throw InstanceError("missing 'decay'");
  DecayProfile decay = detail::decay_from_json(doc["decay"]);

  if (!doc.contains("values") || !doc["values"].is_array()) throw InstanceError("missing 'values'");
  const auto& values = doc["values"];
  if (static_cast<int>(values.size()) != days)
    throw InstanceError("'values' has " + std::to_string(values.size()) + " days, T=" + std::to_string(days));
  std::vector<std::vector<Money>> rows;
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (!values[t].is_array() || static_cast<int>(values[t].size()) != units)
      throw InstanceError("day " + std::to_string(t + 1) + " must list N=" + std::to_string(units) + " values");
    std::vector<Money> row;
    for (const auto& v : values[t]) row.push_back(detail::money_from_json(v, "value on day " + std::to_string(t + 1)));
    rows.push_back(std::move(row));
  }
  return Instance(ValuationMatrix::from_days(rows, mode == BuyerMode::multi), std::move(decay), cost, mode);
}

inline Instance load_instance(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(std::string("malformed instance document: ") + e.what());
  }
  try {
    return instance_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("malformed instance document: ") + e.what());
  }
}

inline Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return load_instance(text.str());
}

inline nlohmann::json decay_to_json(const DecayProfile& decay) {
  switch (decay.kind()) {
    case DecayProfile::Kind::cliff:
      return {{"kind", "cliff"}, {"d", decay.shelf_life()}};
    case DecayProfile::Kind::fractional:
      return {{"kind", "fractional"}, {"d", decay.shelf_life()}, {"r", decay.residual().to_string()}};
    case DecayProfile::Kind::step: {
      auto r = nlohmann::json::array();
      for (Fraction f : decay.levels()) r.push_back(f.to_string());
      return {{"kind", "step"}, {"r", r}};
    }
  }
  return {};
}

inline nlohmann::json instance_to_json(const Instance& instance) {
  auto values = nlohmann::json::array();
  for (int t = 0; t < instance.days(); ++t) {
    auto row = nlohmann::json::array();
    for (Money v : instance.valuations().day(t)) row.push_back(v.to_string());
    values.push_back(row);
  }
  return {{"N", instance.units()},
          {"T", instance.days()},
          {"storage_cost", instance.storage_cost().to_string()},
          {"mode", to_string(instance.mode())},
          {"decay", decay_to_json(instance.decay())},
          {"values", values}};
}

inline std::string save_instance(const Instance& instance) { return instance_to_json(instance).dump(2); }

inline nlohmann::json schedule_to_json(const PriceSchedule& schedule) {
  auto out = nlohmann::json::array();
  for (Money p : schedule.prices) out.push_back(p.to_string());
  return out;
}

inline nlohmann::json outcome_to_json(const Outcome& outcome) {
  return {{"revenue", outcome.revenue.to_string()},
          {"utility", outcome.buyer_utility.to_string()},
          {"quantities", outcome.quantities}};
}

/// Purchase plan as [[unit, consumption day, purchase day], ...], 1-based.
inline nlohmann::json plan_to_json(const PurchasePlan& plan) {
  auto out = nlohmann::json::array();
  for (int t = 0; t < plan.days(); ++t)
    for (int i = 0; i < plan.units(); ++i)
      if (auto s = plan.purchase_day(i, t)) out.push_back({i + 1, t + 1, *s + 1});
  return out;
}

}  // namespace shelfprice
