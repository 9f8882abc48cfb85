// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "atansum/algebra.hpp"
#include "atansum/closedform.hpp"
#include "atansum/error.hpp"
#include "atansum/lemma.hpp"
#include "atansum/parser.hpp"
#include "atansum/sequences.hpp"

namespace atansum {

struct PrintedArg {
  Slot slot;
  std::string text;
  SurdRationalFunction expr;
};

/// A second configuration that must reproduce the same identity.
struct AltConfig {
  std::string family;
  LemmaConfig cfg;
};

/// An out-of-range parameter at which the identity is expected to fail.
struct Probe {
  ExactScalar alpha;
  std::string alpha_text;
  ClosedFormExpr rhs;
  std::string rhs_text;
};

/// One identity: a lemma configuration, the printed argument forms, and the closed form.
/// The printed sum starts at lemma index index_shift + 1 and is multiplied by lhs_sign.
struct IdentityRecord {
  std::string id;
  std::string family;
  LemmaConfig cfg;
  std::string f_text;
  std::string alpha_text;
  long index_shift = 0;
  int lhs_sign = 1;
  std::vector<PrintedArg> printed_args;
  ClosedFormExpr rhs;
  std::string rhs_text;
  std::vector<std::string> constraints;
  std::string notes;
  std::optional<Probe> probe;
  std::vector<AltConfig> alt_configs;
};

/// Constraint strings understood by the verifier.
inline bool constraint_known(std::string_view c) { return c == "alpha > 0" || c == "q odd"; }

inline bool constraint_holds(std::string_view c, const LemmaConfig& cfg) {
  if (c == "alpha > 0") return cfg.alpha.sign() > 0;
  if (c == "q odd") return cfg.q % 2 == 1;
  return false;
}

namespace detail {

using json = nlohmann::json;

class RecordReader {
 public:
  RecordReader(const json& j, std::string id) : j_(j), id_(std::move(id)) {}

  [[noreturn]] void schema(const std::string& field, const std::string& what) const {
    throw Error(ErrorCode::SchemaError, "record '" + id_ + "': field '" + field + "' " + what);
  }

  const json& require(const std::string& field) const {
    if (!j_.contains(field)) schema(field, "is missing");
    return j_.at(field);
  }

  std::string str(const std::string& field) const {
    const json& v = require(field);
    if (!v.is_string()) schema(field, "must be a string");
    return v.get<std::string>();
  }

  long integer(const std::string& field, long min) const {
    const json& v = require(field);
    if (!v.is_number_integer()) schema(field, "must be an integer");
    long x = v.get<long>();
    if (x < min) schema(field, "must be >= " + std::to_string(min));
    return x;
  }

  template <class F>
  auto parsed(const std::string& field, const std::string& text, F&& parse) const {
    try {
      return parse(text);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "record '" + id_ + "': field '" + field + "': " + e.what());
    }
  }

  LemmaConfig config(const json& j, const std::string& prefix) const {
    RecordReader r(j, id_);
    std::string vname = r.str("variant");
    auto v = parse_variant(vname);
    if (!v) schema(prefix + "variant", "has unknown value '" + vname + "'");
    SequenceSpec f = parsed(prefix + "f", r.str("f"), [](const std::string& s) { return parse_sequence(s); });
    ExactScalar a = parsed(prefix + "alpha", r.str("alpha"), [](const std::string& s) { return parse_scalar(s); });
    long m = r.integer("m", 1);
    long q = r.integer("q", 1);
    try {
      return LemmaConfig(*v, f, a, static_cast<unsigned>(m), static_cast<unsigned>(q));
    } catch (const Error& e) {
      schema(prefix + "q", e.what());
    }
  }

 private:
  const json& j_;
  std::string id_;
};

inline IdentityRecord read_record(const json& j, std::size_t index) {
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, "record #" + std::to_string(index) + " is not an object");
  std::string id = "#" + std::to_string(index);
  if (j.contains("id") && j.at("id").is_string()) id = j.at("id").get<std::string>();
  RecordReader r(j, id);
  static const std::set<std::string> known = {"id",     "family",      "variant",  "f",     "alpha",
                                              "m",      "q",           "index_shift", "lhs_sign", "printed_args",
                                              "rhs",    "constraints", "notes",    "probe", "alt_configs"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) r.schema(key, "is not part of the schema");

  IdentityRecord rec;
  rec.id = r.str("id");
  if (rec.id.empty()) r.schema("id", "must not be empty");
  rec.family = r.str("family");
  rec.f_text = r.str("f");
  rec.alpha_text = r.str("alpha");
  rec.cfg = r.config(j, "");
  if (j.contains("index_shift")) rec.index_shift = r.integer("index_shift", 0);
  if (j.contains("lhs_sign")) {
    long s = r.integer("lhs_sign", -1);
    if (s != 1 && s != -1) r.schema("lhs_sign", "must be 1 or -1");
    rec.lhs_sign = static_cast<int>(s);
  }

  const json& pa = r.require("printed_args");
  if (!pa.is_array()) r.schema("printed_args", "must be an array");
  for (std::size_t i = 0; i < pa.size(); ++i) {
    std::string where = "printed_args[" + std::to_string(i) + "]";
    RecordReader a(pa[i], rec.id);
    if (!pa[i].is_object()) r.schema(where, "must be an object");
    std::string slot_name = a.str("slot");
    auto slot = Slot::parse(slot_name);
    if (!slot) r.schema(where + ".slot", "has unknown value '" + slot_name + "'");
    if (slot->kind == Slot::Second && !rec.cfg.squared()) r.schema(where + ".slot", "'second' needs a squared variant");
    if (slot->kind == Slot::Cofactor && slot->j >= rec.cfg.m) r.schema(where + ".slot", "cofactor index must be < m");
    PrintedArg arg{*slot, a.str("expr"), {}};
    arg.expr = r.parsed(where + ".expr", arg.text, [](const std::string& s) { return parse_rational_function(s); });
    rec.printed_args.push_back(std::move(arg));
  }

  rec.rhs_text = r.str("rhs");
  rec.rhs = r.parsed("rhs", rec.rhs_text, [](const std::string& s) { return parse_closed_form(s); });
  if (rec.rhs.empty()) r.schema("rhs", "must not be empty");

  const json& cs = r.require("constraints");
  if (!cs.is_array()) r.schema("constraints", "must be an array");
  for (const auto& c : cs) {
    if (!c.is_string()) r.schema("constraints", "entries must be strings");
    std::string text = c.get<std::string>();
    if (!constraint_known(text)) r.schema("constraints", "has unknown constraint '" + text + "'");
    rec.constraints.push_back(std::move(text));
  }
  rec.notes = r.str("notes");

  if (j.contains("probe")) {
    const json& p = j.at("probe");
    if (!p.is_object()) r.schema("probe", "must be an object");
    RecordReader pr(p, rec.id);
    Probe probe;
    probe.alpha_text = pr.str("alpha");
    probe.alpha = r.parsed("probe.alpha", probe.alpha_text, [](const std::string& s) { return parse_scalar(s); });
    probe.rhs_text = pr.str("rhs");
    probe.rhs = r.parsed("probe.rhs", probe.rhs_text, [](const std::string& s) { return parse_closed_form(s); });
    rec.probe = std::move(probe);
  }
  if (j.contains("alt_configs")) {
    const json& alts = j.at("alt_configs");
    if (!alts.is_array()) r.schema("alt_configs", "must be an array");
    for (std::size_t i = 0; i < alts.size(); ++i) {
      std::string where = "alt_configs[" + std::to_string(i) + "].";
      if (!alts[i].is_object()) r.schema("alt_configs", "entries must be objects");
      RecordReader ar(alts[i], rec.id);
      rec.alt_configs.push_back({ar.str("family"), r.config(alts[i], where)});
    }
  }
  return rec;
}

}  // namespace detail

/// Parses a JSON array of records. Throws ParseError for malformed JSON or expressions and
/// SchemaError for structural problems; both name the record.
inline std::vector<IdentityRecord> load_catalog(std::string_view text) {
  detail::json doc;
  try {
    doc = detail::json::parse(text.begin(), text.end());
  } catch (const detail::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::SchemaError, "catalog must be a JSON array of records");
  std::vector<IdentityRecord> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    IdentityRecord rec = detail::read_record(doc[i], i);
    if (!seen.insert(rec.id).second)
      throw Error(ErrorCode::SchemaError, "record '" + rec.id + "': field 'id' is duplicated");
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<IdentityRecord> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open catalog '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_catalog(ss.str());
}

inline const IdentityRecord* find_record(const std::vector<IdentityRecord>& records, std::string_view id) {
  for (const auto& r : records)
    if (r.id == id) return &r;
  return nullptr;
}

}  // namespace atansum
