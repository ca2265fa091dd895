// Copyright 2026 The matchmarket Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "matchmarket/io.h"

#include <charconv>
#include <string>
#include <system_error>
#include <vector>

#include "matchmarket/errors.h"

namespace matchmarket {
namespace {

const Json& Require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(std::string("missing key \"") + key + "\"");
  }
  return doc.at(key);
}

std::vector<std::string> NamesFromJson(const Json& doc, const char* key) {
  std::vector<std::string> names;
  if (!doc.contains(key)) return names;
  const Json& list = doc.at(key);
  if (!list.is_array()) {
    throw ParseError(std::string("\"") + key + "\" must be an array");
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].is_string()) {
      throw ParseError(std::string(key) + "[" + std::to_string(i) +
                       "] must be a string");
    }
    names.push_back(list[i].get<std::string>());
  }
  return names;
}

std::string ShortestDecimal(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (result.ec != std::errc()) throw ParseError("unprintable number");
  return std::string(buffer, result.ptr);
}

RationalMatrix CheckedUtilities(const Json& doc, const char* key) {
  RationalMatrix m = RationalMatrixFromJson(Require(doc, key), key);
  if (!m.is_square()) {
    throw ParseError(std::string(key) + " must be square, got " +
                     std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).sign() < 0) {
        throw ParseError(std::string(key) + "[" + std::to_string(i) + "][" +
                         std::to_string(j) + "] = " + m(i, j).ToString() +
                         " is negative");
      }
    }
  }
  return m;
}

}  // namespace

Json RationalToJson(const Rational& r) { return r.ToString(); }

Rational RationalFromJson(const Json& value, const std::string& where) {
  try {
    if (value.is_string()) {
      return Rational::FromString(value.get<std::string>());
    }
    if (value.is_number_integer()) {
      if (value.is_number_unsigned()) {
        return Rational(mpq_class(
            mpz_class(std::to_string(value.get<std::uint64_t>()), 10)));
      }
      return Rational(value.get<long>());
    }
    if (value.is_number_float()) {
      return Rational::FromString(ShortestDecimal(value.get<double>()));
    }
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected a rational string or number, got " +
                   value.dump());
}

Json RationalMatrixToJson(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(RationalToJson(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

RationalMatrix RationalMatrixFromJson(const Json& value,
                                      const std::string& where) {
  if (!value.is_array()) throw ParseError(where + " must be an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const Json& row = value[i];
    if (!row.is_array()) {
      throw ParseError(where + "[" + std::to_string(i) + "] must be an array");
    }
    std::vector<Rational> parsed;
    for (std::size_t j = 0; j < row.size(); ++j) {
      parsed.push_back(RationalFromJson(
          row[j], where + "[" + std::to_string(i) + "][" + std::to_string(j) +
                      "]"));
    }
    rows.push_back(std::move(parsed));
  }
  try {
    return RationalMatrix::FromRows(rows);
  } catch (const StructuralError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Json DoubleMatrixToJson(const DoubleMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

DoubleMatrix DoubleMatrixFromJson(const Json& value,
                                  const std::string& where) {
  if (!value.is_array()) throw ParseError(where + " must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const Json& row = value[i];
    if (!row.is_array()) {
      throw ParseError(where + "[" + std::to_string(i) + "] must be an array");
    }
    std::vector<double> parsed;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j].is_number()) {
        parsed.push_back(row[j].get<double>());
      } else {
        parsed.push_back(
            RationalFromJson(row[j], where + "[" + std::to_string(i) + "][" +
                                         std::to_string(j) + "]")
                .ToDouble());
      }
    }
    rows.push_back(std::move(parsed));
  }
  try {
    return DoubleMatrix::FromRows(rows);
  } catch (const StructuralError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Json InstanceToJson(const Instance& instance) {
  Instance named = instance;
  FillDefaultNames(named);
  Json doc;
  doc["kind"] = instance.two_sided() ? "two-sided" : "one-sided";
  doc["agents"] = named.agents;
  doc["goods"] = named.goods;
  doc["u"] = RationalMatrixToJson(instance.u);
  if (instance.w) doc["w"] = RationalMatrixToJson(*instance.w);
  return doc;
}

Instance InstanceFromJson(const Json& doc) {
  const Json& kind = Require(doc, "kind");
  if (!kind.is_string() || (kind != "one-sided" && kind != "two-sided")) {
    throw ParseError("\"kind\" must be \"one-sided\" or \"two-sided\"");
  }
  const bool two_sided = kind == "two-sided";
  if (two_sided != doc.contains("w")) {
    throw ParseError(two_sided ? "two-sided instance is missing \"w\""
                               : "one-sided instance must not carry \"w\"");
  }
  Instance instance;
  instance.u = CheckedUtilities(doc, "u");
  if (two_sided) {
    instance.w = CheckedUtilities(doc, "w");
    if (instance.w->rows() != instance.u.rows()) {
      throw ParseError("\"u\" and \"w\" have different sizes");
    }
  }
  instance.agents = NamesFromJson(doc, "agents");
  instance.goods = NamesFromJson(doc, "goods");
  try {
    instance.Validate();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  FillDefaultNames(instance);
  return instance;
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Instance ParseInstance(std::string_view text) {
  return InstanceFromJson(ParseJson(text));
}

std::string SerializeInstance(const Instance& instance) {
  return InstanceToJson(instance).dump(2) + "\n";
}

std::size_t AllocationDocument::size() const {
  return std::visit([](const auto& m) { return m.rows(); }, x);
}

RationalMatrix AllocationDocument::AsRational() const {
  if (const auto* exact = std::get_if<RationalMatrix>(&x)) return *exact;
  return ToRationalExact(std::get<DoubleMatrix>(x));
}

DoubleMatrix AllocationDocument::AsDouble() const {
  if (const auto* approx = std::get_if<DoubleMatrix>(&x)) return *approx;
  return ToDouble(std::get<RationalMatrix>(x));
}

Json AllocationToJson(const AllocationDocument& doc) {
  Json out;
  if (const auto* exact = std::get_if<RationalMatrix>(&doc.x)) {
    out["x"] = RationalMatrixToJson(*exact);
    out["exact"] = true;
  } else {
    out["x"] = DoubleMatrixToJson(std::get<DoubleMatrix>(doc.x));
    out["exact"] = false;
  }
  return out;
}

AllocationDocument AllocationFromJson(const Json& doc) {
  const Json& x = Require(doc, "x");
  bool exact = true;
  if (doc.contains("exact")) {
    if (!doc.at("exact").is_boolean()) {
      throw ParseError("\"exact\" must be a boolean");
    }
    exact = doc.at("exact").get<bool>();
  }
  AllocationDocument out;
  if (exact) {
    out.x = RationalMatrixFromJson(x, "x");
  } else {
    out.x = DoubleMatrixFromJson(x, "x");
  }
  if (out.size() == 0 ||
      std::visit([](const auto& m) { return !m.is_square(); }, out.x)) {
    throw ParseError("allocation \"x\" must be a non-empty square matrix");
  }
  return out;
}

Json LotteryToJson(const Lottery& lottery) {
  Json out;
  out["matchings"] = lottery.matchings;
  Json weights = Json::array();
  for (const Rational& w : lottery.weights) weights.push_back(RationalToJson(w));
  out["weights"] = std::move(weights);
  return out;
}

Lottery LotteryFromJson(const Json& doc) {
  const Json& matchings = Require(doc, "matchings");
  const Json& weights = Require(doc, "weights");
  if (!matchings.is_array() || !weights.is_array() ||
      matchings.size() != weights.size()) {
    throw ParseError(
        "\"matchings\" and \"weights\" must be arrays of equal length");
  }
  Lottery lottery;
  for (std::size_t k = 0; k < matchings.size(); ++k) {
    const Json& perm = matchings[k];
    if (!perm.is_array()) {
      throw ParseError("matchings[" + std::to_string(k) +
                       "] must be an array");
    }
    Permutation p;
    std::vector<char> seen(perm.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (!perm[i].is_number_integer() || perm[i].get<long>() < 0 ||
          perm[i].get<std::size_t>() >= perm.size() ||
          seen[perm[i].get<std::size_t>()]) {
        throw ParseError("matchings[" + std::to_string(k) +
                         "] is not a permutation");
      }
      seen[perm[i].get<std::size_t>()] = 1;
      p.push_back(perm[i].get<int>());
    }
    lottery.matchings.push_back(std::move(p));
    lottery.weights.push_back(
        RationalFromJson(weights[k], "weights[" + std::to_string(k) + "]"));
  }
  return lottery;
}

}  // namespace matchmarket
