// Input documents: a ring, named declarations and one command.
//
//   {
//     "ring": "Z",
//     "declarations": {
//       "M": {"type": "module", "generators": 1, "relations": [[8]]},
//       "S": {"type": "spec", "variant": "telescope", "gens": [2]}
//     },
//     "command": {"verb": "heart", "args": {"module": "M", "spec": "S"},
//                 "expect": {"verdict": true}}
//   }
//
// Object arguments name declarations; element and integer arguments are
// literals.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "weightkit/io.hpp"

namespace weightkit {

struct Declaration {
  using Value = std::variant<Matrix, FpModule, ChainComplex, ChainMap, LocalizationSpec,
                             ModuleHom, ShortExactSequence>;
  Value value;

  /// "matrix", "module", "complex", "chain_map", "spec", "module_map", "ses".
  std::string type() const;
};

bool operator==(const Declaration& a, const Declaration& b);

struct Command {
  std::string verb;
  io::Json args = io::Json::object();
  /// Asserted outcome, e.g. {"verdict": true} or {"describe": "Z/2"}.
  std::optional<io::Json> expect;
  friend bool operator==(const Command&, const Command&) = default;
};

struct InputDocument {
  RingSpec ring;
  std::map<std::string, Declaration> declarations;
  Command command;
  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

/// Argument kinds accepted by the verbs.
enum class ArgKind {
  Integer,
  Element,
  Elements,
  Matrix,
  Module,
  Modules,
  Complex,
  Complexes,
  ChainMap,
  Spec,
  Sequences,
};

struct ArgSpec {
  std::string name;
  ArgKind kind;
  bool required = true;
};

/// Every verb with its arguments, in a fixed order.
const std::map<std::string, std::vector<ArgSpec>>& verb_table();

/// Parses and validates; throws io::FormatError (syntax errors with line
/// and column, semantic errors naming the declaration or argument).
InputDocument parse_document(const std::string& text);
InputDocument document_from_json(const io::Json& j);

io::Json to_json(const Declaration& d);
io::Json to_json(const InputDocument& doc);
std::string serialize(const InputDocument& doc);

/// Typed access to validated arguments.
const Declaration& declaration(const InputDocument& doc, const std::string& name);
template <class T>
const T& declared(const InputDocument& doc, const std::string& name) {
  return std::get<T>(declaration(doc, name).value);
}

}  // namespace weightkit
