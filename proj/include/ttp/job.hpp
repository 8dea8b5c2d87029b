#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttp/families.hpp"

namespace ttp {

struct JobOptions {
  int maxdeg = 8;   // Groebner / Hilbert / internal degree
  int homdeg = 6;   // resolution length
  int bound = 50;   // f_n scan
};

/// One unit of work for the command line. `params` keeps the text of each
/// value; `param` parses it in the job field.
struct JobDocument {
  Field field = Field::rationals();
  std::string family = "C";
  std::map<std::string, std::string> params;
  std::vector<std::string> alphabet;  // raw only
  std::vector<int> weights;           // raw only, optional
  std::vector<std::string> relations; // raw only
  std::map<std::string, std::vector<std::string>> ranges;  // scan only
  bool jnf = false;                                       // scan only
  bool zero_missing = false;
  JobOptions options;

  static const std::vector<std::string>& param_names(const std::string& family) {
    static const std::vector<std::string> c{"a", "b", "c"}, t{"a", "b", "c", "d", "e", "f", "A", "B", "C", "D", "E", "F"},
        gh{"g", "h"}, none{};
    if (family == "C") return c;
    if (family == "T") return t;
    if (family == "Tgh") return gh;
    if (family == "raw") return none;
    throw Error(ErrorCode::ParseError, "unknown family '" + family + "' (C, T, Tgh, raw)");
  }

  /// Unknown names are rejected; missing ones are an error unless zero_missing.
  void validate() const {
    const auto& names = param_names(family);
    for (const auto& [k, v] : params)
      if (std::find(names.begin(), names.end(), k) == names.end())
        throw Error(ErrorCode::ParseError, "unknown parameter '" + k + "' for family " + family);
    for (const auto& [k, v] : ranges)
      if (std::find(names.begin(), names.end(), k) == names.end())
        throw Error(ErrorCode::ParseError, "unknown parameter '" + k + "' for family " + family);
    if (!zero_missing)
      for (const auto& n : names)
        if (!params.count(n)) throw Error(ErrorCode::ParseError, "missing parameter '" + n + "' for family " + family);
    if (family == "raw") {
      if (alphabet.empty()) throw Error(ErrorCode::ParseError, "raw job needs an alphabet");
      if (relations.empty()) throw Error(ErrorCode::ParseError, "raw job needs relations");
      if (!weights.empty() && weights.size() != alphabet.size())
        throw Error(ErrorCode::ParseError, "weights and alphabet differ in length");
    } else if (!alphabet.empty() || !relations.empty()) {
      throw Error(ErrorCode::ParseError, "alphabet and relations belong to raw jobs");
    }
  }

  Scalar param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) {
      if (!zero_missing) throw Error(ErrorCode::ParseError, "missing parameter '" + name + "'");
      return field.zero();
    }
    try {
      return parse_scalar(it->second, field);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "parameter '" + name + "': " + e.what());
    }
  }

  ParamTuple2D tuple2d() const {
    require("C");
    return {param("a"), param("b"), param("c")};
  }
  ParamTuple3D tuple3d() const {
    require("T");
    ParamTuple3D p = ParamTuple3D::zero(field);
    for (std::size_t i = 0; i < 12; ++i) *p.slots()[i] = param(ParamTuple3D::names[i]);
    return p.lift(p.field());
  }
  std::pair<Scalar, Scalar> gh() const {
    require("Tgh");
    return {param("g"), param("h")};
  }

  Presentation presentation() const {
    validate();
    if (family == "C") return build_C(tuple2d());
    if (family == "T") return build_T(tuple3d());
    if (family == "Tgh") {
      auto [g, h] = gh();
      return build_Tgh(g, h);
    }
    auto al = make_alphabet(alphabet, weights);
    std::vector<NCPoly> rels;
    for (std::size_t i = 0; i < relations.size(); ++i) {
      try {
        rels.push_back(parse_poly(relations[i], al, field));
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, "relation " + std::to_string(i + 1) + ": " + e.what());
      }
    }
    return Presentation{al, field, rels, "raw"};
  }

  /// Accepts {"field", "family", "params", "alphabet", "weights", "relations",
  /// "ranges", "jnf", "zero_missing", "options": {"maxdeg", "homdeg", "bound"}}.
  static JobDocument from_json(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ParseError, "at byte " + std::to_string(e.byte) + ": malformed JSON");
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "at byte 0: job document must be an object");
    static const std::vector<std::string> keys{"field",     "family", "params", "alphabet",     "weights",
                                                  "relations", "ranges", "jnf",    "zero_missing", "options"};
    for (const auto& [k, v] : j.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw Error(ErrorCode::ParseError, "unknown key '" + k + "'");
    JobDocument d;
    try {
      if (j.contains("field")) d.field = parse_field(j.at("field").get<std::string>());
      if (j.contains("family")) d.family = j.at("family").get<std::string>();
      if (j.contains("params")) {
        for (const auto& [k, v] : j.at("params").items()) d.params[k] = scalar_text(k, v);
      }
      if (j.contains("alphabet")) d.alphabet = j.at("alphabet").get<std::vector<std::string>>();
      if (j.contains("weights")) d.weights = j.at("weights").get<std::vector<int>>();
      if (j.contains("relations")) d.relations = j.at("relations").get<std::vector<std::string>>();
      if (j.contains("ranges")) {
        for (const auto& [k, v] : j.at("ranges").items()) {
          if (!v.is_array()) throw Error(ErrorCode::ParseError, "range '" + k + "' must be a list");
          for (const auto& x : v) d.ranges[k].push_back(scalar_text(k, x));
        }
      }
      if (j.contains("jnf")) d.jnf = j.at("jnf").get<bool>();
      if (j.contains("zero_missing")) d.zero_missing = j.at("zero_missing").get<bool>();
      if (j.contains("options")) {
        for (const auto& [k, v] : j.at("options").items()) {
          if (k == "maxdeg") d.options.maxdeg = v.get<int>();
          else if (k == "homdeg") d.options.homdeg = v.get<int>();
          else if (k == "bound") d.options.bound = v.get<int>();
          else throw Error(ErrorCode::ParseError, "unknown option '" + k + "'");
        }
      }
    } catch (const nlohmann::json::type_error& e) {
      throw Error(ErrorCode::ParseError, std::string("wrong value type: ") + e.what());
    }
    param_names(d.family);
    return d;
  }

 private:
  static std::string scalar_text(const std::string& k, const nlohmann::json& v) {
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    throw Error(ErrorCode::ParseError, "parameter '" + k + "' must be an integer or a string such as \"1/2\"");
  }

  void require(const char* fam) const {
    if (family != fam) throw Error(ErrorCode::ConstraintError, std::string("family ") + fam + " expected, got " + family);
  }
};

}  // namespace ttp
