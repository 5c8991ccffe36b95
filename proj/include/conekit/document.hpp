#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conekit/bundle.hpp"

namespace conekit {

inline constexpr const char* kSchemaVersion = "conekit/1";

using NamedVectors = std::vector<std::pair<std::string, IntVec>>;

// A parsed input file. Only the members of the document's kind are populated.
struct Document {
  std::string kind;  // monoid, morphism, complex, subdivision, multichar, flags, lattice_chain
  std::string name;
  std::string note;
  nlohmann::json expected = nlohmann::json::object();
  std::vector<IntVec> points;

  std::optional<FineMonoid> monoid;

  std::optional<MonoidMap> morphism;
  NamedVectors source_names, target_names;

  std::optional<Complex> complex;

  std::optional<PoGroup> sigma;  // subdivision, or the cone of a multichar
  std::vector<PoGroup> pieces;

  std::optional<MultiCharacter> multichar;

  Fan fan;
  std::vector<WeightedFlag> flags;
  std::vector<MultiCharacter> psi;

  std::optional<LatticeChain> chain;
};

// Throws SchemaError("line L, column C: ...") on malformed JSON and SchemaError("$.path: ...")
// or RankMismatch("$.path: ...") on invalid payloads.
Document parse_document(const std::string& text);
Document document_from_json(const nlohmann::json& j);

// Canonical form: integers as decimal strings, fixed key order.
nlohmann::json to_json(const Document& d);
std::string serialize(const Document& d);

// Element syntax for --q / --x: a name from the given table, "a,b,c", or a JSON array.
IntVec parse_element(const std::string& text, std::size_t n, const NamedVectors& names = {});
std::string render_element(const IntVec& v, const NamedVectors& names);

// 64-bit FNV-1a of the text, as 16 hex digits.
std::string digest(const std::string& text);

}  // namespace conekit
