#include "weightkit/document.hpp"

namespace weightkit {

using io::FormatError;
using io::Json;

namespace {

std::string decl_path(const std::string& name) { return "declarations." + name; }

Declaration declaration_from_json(const RingSpec& r, const std::string& name, const Json& j) {
  const std::string path = decl_path(name);
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw FormatError(path, "expected an object with a \"type\"");
  const std::string type = j["type"].get<std::string>();
  if (type == "matrix") {
    if (!j.contains("rows")) throw FormatError(path, "a matrix declaration needs rows, cols, entries");
    return Declaration{io::matrix_from_json(r, j, path)};
  }
  if (type == "module") return Declaration{io::module_from_json(r, j, path)};
  if (type == "complex") return Declaration{io::complex_from_json(r, j, path)};
  if (type == "chain_map") return Declaration{io::chain_map_from_json(r, j, path)};
  if (type == "spec") return Declaration{io::spec_from_json(r, j, path)};
  if (type == "module_map") return Declaration{io::module_hom_from_json(r, j, path)};
  if (type == "ses") return Declaration{io::ses_from_json(r, j, path)};
  throw FormatError(path + ".type", "unknown declaration type \"" + type + "\"");
}

const char* kind_name(ArgKind k) {
  switch (k) {
    case ArgKind::Integer: return "an integer";
    case ArgKind::Element: return "a ring element";
    case ArgKind::Elements: return "a list of ring elements";
    case ArgKind::Matrix: return "a matrix name";
    case ArgKind::Module: return "a module name";
    case ArgKind::Modules: return "a list of module names";
    case ArgKind::Complex: return "a complex name";
    case ArgKind::Complexes: return "a list of complex names";
    case ArgKind::ChainMap: return "a chain map name";
    case ArgKind::Spec: return "a localization spec name";
    case ArgKind::Sequences: return "a list of short exact sequence names";
  }
  return "";
}

// Declaration type a name-valued argument must refer to.
std::optional<std::string> referenced_type(ArgKind k) {
  switch (k) {
    case ArgKind::Matrix: return "matrix";
    case ArgKind::Module:
    case ArgKind::Modules: return "module";
    case ArgKind::Complex:
    case ArgKind::Complexes: return "complex";
    case ArgKind::ChainMap: return "chain_map";
    case ArgKind::Spec: return "spec";
    case ArgKind::Sequences: return "ses";
    default: return std::nullopt;
  }
}

bool is_list(ArgKind k) {
  return k == ArgKind::Modules || k == ArgKind::Complexes || k == ArgKind::Sequences;
}

void validate_argument(const InputDocument& doc, const ArgSpec& spec, const Json& v,
                       const std::string& path) {
  auto bad = [&] { return FormatError(path, std::string("expected ") + kind_name(spec.kind)); };
  if (spec.kind == ArgKind::Integer) {
    if (!v.is_number_integer()) throw bad();
    return;
  }
  if (spec.kind == ArgKind::Element) {
    io::element_from_json(doc.ring, v, path);
    return;
  }
  if (spec.kind == ArgKind::Elements) {
    io::elements_from_json(doc.ring, v, path);
    return;
  }
  const std::string want = *referenced_type(spec.kind);
  auto check_name = [&](const Json& n, const std::string& p) {
    if (!n.is_string()) throw FormatError(p, std::string("expected ") + kind_name(spec.kind));
    auto it = doc.declarations.find(n.get<std::string>());
    if (it == doc.declarations.end())
      throw FormatError(p, "unknown declaration \"" + n.get<std::string>() + "\"");
    if (it->second.type() != want)
      throw FormatError(p, "\"" + n.get<std::string>() + "\" is a " + it->second.type() +
                               ", expected a " + want);
  };
  if (is_list(spec.kind)) {
    if (!v.is_array()) throw bad();
    for (std::size_t k = 0; k < v.size(); ++k) check_name(v[k], path + "[" + std::to_string(k) + "]");
  } else {
    check_name(v, path);
  }
}

void validate_command(const InputDocument& doc) {
  const auto& table = verb_table();
  auto it = table.find(doc.command.verb);
  if (it == table.end()) throw FormatError("command.verb", "unknown verb \"" + doc.command.verb + "\"");
  const Json& args = doc.command.args;
  if (!args.is_object()) throw FormatError("command.args", "expected an object");
  for (const auto& spec : it->second) {
    if (!args.contains(spec.name)) {
      if (spec.required)
        throw FormatError("command.args", "missing argument \"" + spec.name + "\" (" +
                                              kind_name(spec.kind) + ")");
      continue;
    }
    validate_argument(doc, spec, args[spec.name], "command.args." + spec.name);
  }
  for (const auto& [key, value] : args.items()) {
    bool known = false;
    for (const auto& spec : it->second) known = known || spec.name == key;
    if (!known)
      throw FormatError("command.args." + key,
                        "unknown argument for verb \"" + doc.command.verb + "\"");
  }
  if (doc.command.expect && !doc.command.expect->is_object())
    throw FormatError("command.expect", "expected an object");
}

}  // namespace

std::string Declaration::type() const {
  static const char* names[] = {"matrix", "module", "complex", "chain_map", "spec", "module_map", "ses"};
  return names[value.index()];
}

bool operator==(const Declaration& a, const Declaration& b) {
  if (a.value.index() != b.value.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, Matrix>) return x == y;
        else return io::same(x, y);
      },
      a.value);
}

const std::map<std::string, std::vector<ArgSpec>>& verb_table() {
  using K = ArgKind;
  static const std::map<std::string, std::vector<ArgSpec>> table = {
      {"snf", {{"matrix", K::Matrix}}},
      {"solve", {{"matrix", K::Matrix}, {"rhs", K::Matrix}}},
      {"module-nf", {{"module", K::Module}}},
      {"hom", {{"left", K::Module}, {"right", K::Module}}},
      {"ext1", {{"left", K::Module}, {"right", K::Module}}},
      {"tor1", {{"left", K::Module}, {"right", K::Module}}},
      {"pd", {{"module", K::Module}}},
      {"truncate-w", {{"complex", K::Complex}, {"n", K::Integer}}},
      {"truncate-t", {{"complex", K::Complex}, {"n", K::Integer}}},
      {"cone", {{"map", K::ChainMap}}},
      {"minimize", {{"complex", K::Complex}}},
      {"heq", {{"complex", K::Complex}, {"other", K::Complex}}},
      {"homology", {{"complex", K::Complex}}},
      {"weight-range", {{"complex", K::Complex}}},
      {"contra", {{"module", K::Module}, {"s", K::Element}}},
      {"ideal-contra", {{"module", K::Module}, {"gens", K::Elements}}},
      {"complete", {{"module", K::Module}, {"s", K::Element}}},
      {"reduce", {{"module", K::Module}, {"s", K::Element}, {"n", K::Integer, false}}},
      {"flatness",
       {{"s", K::Element}, {"modules", K::Modules, false}, {"count", K::Integer, false},
        {"max_length", K::Integer, false}}},
      {"localize", {{"spec", K::Spec}}},
      {"heart", {{"module", K::Module}, {"spec", K::Spec}}},
      {"heart-cone", {{"module", K::Module}, {"spec", K::Spec}}},
      {"local-complex", {{"complex", K::Complex}, {"spec", K::Spec}}},
      {"square", {{"k", K::Integer}, {"spec", K::Spec}, {"tests", K::Modules}}},
      {"projectives",
       {{"spec", K::Spec}, {"k_max", K::Integer}, {"sequences", K::Sequences, false},
        {"count", K::Integer, false}}},
      {"verify-axioms",
       {{"complexes", K::Complexes, false}, {"count", K::Integer, false},
        {"n_lo", K::Integer, false}, {"n_hi", K::Integer, false}}},
      {"verify-all", {}},
  };
  return table;
}

InputDocument document_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("", "a document is a JSON object");
  InputDocument doc;
  doc.ring = j.contains("ring") ? io::ring_from_json(j["ring"], "ring") : RingSpec::integers();
  if (j.contains("declarations")) {
    const Json& decls = j["declarations"];
    if (!decls.is_object()) throw FormatError("declarations", "expected an object of named values");
    for (const auto& [name, value] : decls.items())
      doc.declarations.emplace(name, declaration_from_json(doc.ring, name, value));
  }
  if (!j.contains("command")) throw FormatError("", "missing field \"command\"");
  const Json& c = j["command"];
  if (!c.is_object() || !c.contains("verb") || !c["verb"].is_string())
    throw FormatError("command", "expected an object with a \"verb\"");
  doc.command.verb = c["verb"].get<std::string>();
  if (c.contains("args")) doc.command.args = c["args"];
  if (c.contains("expect")) doc.command.expect = c["expect"];
  for (const auto& [key, value] : j.items())
    if (key != "ring" && key != "declarations" && key != "command")
      throw FormatError(key, "unknown top-level field");
  validate_command(doc);
  return doc;
}

InputDocument parse_document(const std::string& text) {
  return document_from_json(io::parse_text(text));
}

Json to_json(const Declaration& d) {
  Json out;
  out["type"] = d.type();
  std::visit([&](const auto& v) {
    const Json body = io::to_json(v);
    for (const auto& [k, x] : body.items()) out[k] = x;
  }, d.value);
  return out;
}

Json to_json(const InputDocument& doc) {
  Json out;
  out["ring"] = io::to_json(doc.ring);
  Json decls = Json::object();
  for (const auto& [name, d] : doc.declarations) decls[name] = to_json(d);
  out["declarations"] = std::move(decls);
  Json c;
  c["verb"] = doc.command.verb;
  c["args"] = doc.command.args;
  if (doc.command.expect) c["expect"] = *doc.command.expect;
  out["command"] = std::move(c);
  return out;
}

std::string serialize(const InputDocument& doc) { return to_json(doc).dump(2) + "\n"; }

const Declaration& declaration(const InputDocument& doc, const std::string& name) {
  auto it = doc.declarations.find(name);
  if (it == doc.declarations.end()) throw FormatError("", "unknown declaration \"" + name + "\"");
  return it->second;
}

}  // namespace weightkit
