#include "weightkit/io.hpp"

#include <algorithm>

namespace weightkit::io {

namespace {

std::string at(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw FormatError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(path, "missing field \"" + key + "\"");
  return *it;
}

std::size_t count(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw FormatError(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw FormatError(path, "expected an integer");
  return j.get<int>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path, "expected a list");
  return j;
}

// Runs a constructor, prefixing its precondition errors with the path.
template <class F>
auto guarded(const std::string& path, F&& make) -> decltype(make()) {
  try {
    return make();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(path, e.what());
  }
}

RingSpec ring_or(const RingSpec& fallback, const Json& j, const std::string& path) {
  if (j.is_object() && j.contains("ring")) {
    RingSpec r = ring_from_json(j["ring"], at(path, "ring"));
    if (!(r == fallback))
      throw FormatError(at(path, "ring"), "ring " + r.to_string() + " differs from the document ring " +
                                              fallback.to_string());
    return r;
  }
  return fallback;
}

std::pair<int, int> support_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw FormatError(path, "expected [a, b]");
  const int a = integer(j[0], at(path, 0));
  const int b = integer(j[1], at(path, 1));
  if (b < a - 1) throw FormatError(path, "empty supports are written [a, a - 1]");
  return {a, b};
}

// Degreewise components over [a, b], zero elsewhere.
std::function<Matrix(int)> stored_components(const RingSpec& r, const Json& j,
                                             const std::string& path,
                                             std::function<std::pair<std::size_t, std::size_t>(int)> shape) {
  auto [a, b] = support_from_json(field(j, "support", path), at(path, "support"));
  const Json& list = array(field(j, "components", path), at(path, "components"));
  if (list.size() != static_cast<std::size_t>(b - a + 1))
    throw FormatError(at(path, "components"), "expected " + std::to_string(b - a + 1) + " matrices");
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < list.size(); ++k)
    mats.push_back(matrix_from_json(r, list[k], at(at(path, "components"), k)));
  const int lo = a;
  return [=](int degree) {
    if (degree >= lo && degree < lo + static_cast<int>(mats.size()))
      return mats[static_cast<std::size_t>(degree - lo)];
    auto [rows, cols] = shape(degree);
    return Matrix(r, rows, cols);
  };
}

template <class T>
Json components_json(const ChainComplex& source, const T& map) {
  Json list = Json::array();
  for (int i = source.lo(); i <= source.hi(); ++i) list.push_back(to_json(map.component(i)));
  return list;
}

}  // namespace

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    // Keep nlohmann's description, drop its own byte-based prefix.
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw FormatError("", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                              what);
  }
}

// ---------------------------------------------------------------- scalars

Json to_json(const RingSpec& r) { return r.to_string(); }

RingSpec ring_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) throw FormatError(path, "expected a ring such as \"Z\" or \"GF(5)[x]\"");
  return guarded(path, [&] { return RingSpec::parse(j.get<std::string>()); });
}

Json to_json(const RingElement& e) {
  const RingKind k = e.spec().kind();
  if ((k == RingKind::Integers || k == RingKind::PrimeField) && e.integer().fits_slong_p())
    return e.integer().get_si();
  return e.to_string();
}

RingElement element_from_json(const RingSpec& r, const Json& j, const std::string& path) {
  if (j.is_number_integer()) return r.from_mpz(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_number_unsigned()) return r.from_mpz(mpz_class(std::to_string(j.get<unsigned long long>())));
  if (j.is_string()) return guarded(path, [&] { return r.parse_element(j.get<std::string>()); });
  throw FormatError(path, "expected an element of " + r.to_string() + " (integer or string)");
}

Json to_json(const std::vector<RingElement>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(to_json(e));
  return out;
}

std::vector<RingElement> elements_from_json(const RingSpec& r, const Json& j,
                                            const std::string& path) {
  std::vector<RingElement> out;
  for (std::size_t k = 0; k < array(j, path).size(); ++k)
    out.push_back(element_from_json(r, j[k], at(path, k)));
  return out;
}

// ---------------------------------------------------------------- matrices

Json to_json(const Matrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    entries.push_back(std::move(row));
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["entries"] = std::move(entries);
  return out;
}

Matrix matrix_from_json(const RingSpec& r, const Json& j, const std::string& path) {
  std::size_t rows = 0, cols = 0;
  const Json* entries = nullptr;
  if (j.is_array()) {
    if (j.empty()) throw FormatError(path, "an empty matrix needs the {rows, cols} form");
    entries = &j;
    rows = j.size();
    cols = array(j[0], at(path, 0)).size();
  } else {
    rows = count(field(j, "rows", path), at(path, "rows"));
    cols = count(field(j, "cols", path), at(path, "cols"));
    entries = &array(field(j, "entries", path), at(path, "entries"));
  }
  const std::string epath = j.is_array() ? path : at(path, "entries");
  if (entries->size() != rows)
    throw FormatError(epath, "expected " + std::to_string(rows) + " rows, found " +
                                 std::to_string(entries->size()));
  Matrix m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = array((*entries)[i], at(epath, i));
    if (row.size() != cols)
      throw FormatError(at(epath, i), "expected " + std::to_string(cols) + " entries, found " +
                                          std::to_string(row.size()));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = element_from_json(r, row[c], at(at(epath, i), c));
  }
  return m;
}

// ---------------------------------------------------------------- modules

Json to_json(const FpModule& m) {
  Json out;
  out["ring"] = to_json(m.spec());
  out["generators"] = m.generators();
  out["relations"] = to_json(m.relations());
  return out;
}

FpModule module_from_json(const RingSpec& fallback, const Json& j, const std::string& path) {
  const RingSpec r = ring_or(fallback, j, path);
  const std::size_t g = count(field(j, "generators", path), at(path, "generators"));
  const bool none = !j.contains("relations") || (j["relations"].is_array() && j["relations"].empty());
  Matrix rel = none ? Matrix(r, 0, g) : matrix_from_json(r, j["relations"], at(path, "relations"));
  return guarded(path, [&] { return FpModule(r, g, rel); });
}

Json module_report(const FpModule& m) {
  Json out = to_json(m);
  Json nf;
  nf["free_rank"] = m.free_rank();
  nf["invariant_factors"] = to_json(m.invariant_factors());
  out["normal_form"] = std::move(nf);
  out["describe"] = m.describe();
  return out;
}

Json to_json(const ModuleHom& h) {
  Json out;
  out["source"] = to_json(h.source());
  out["target"] = to_json(h.target());
  out["matrix"] = to_json(h.matrix());
  return out;
}

ModuleHom module_hom_from_json(const RingSpec& r, const Json& j, const std::string& path) {
  FpModule s = module_from_json(r, field(j, "source", path), at(path, "source"));
  FpModule t = module_from_json(r, field(j, "target", path), at(path, "target"));
  Matrix m = matrix_from_json(r, field(j, "matrix", path), at(path, "matrix"));
  return guarded(path, [&] { return ModuleHom(s, t, m); });
}

Json to_json(const ShortExactSequence& s) {
  Json out;
  out["inclusion"] = to_json(s.inclusion);
  out["projection"] = to_json(s.projection);
  return out;
}

ShortExactSequence ses_from_json(const RingSpec& r, const Json& j, const std::string& path) {
  ShortExactSequence s{module_hom_from_json(r, field(j, "inclusion", path), at(path, "inclusion")),
                       module_hom_from_json(r, field(j, "projection", path), at(path, "projection"))};
  if (!same(s.inclusion.target(), s.projection.source()))
    throw FormatError(path, "the middle terms of inclusion and projection differ");
  return s;
}

// ---------------------------------------------------------------- complexes

Json to_json(const ChainComplex& c) {
  Json out;
  out["ring"] = to_json(c.spec());
  out["support"] = Json::array({c.lo(), c.hi()});
  Json ranks = Json::array(), diffs = Json::array();
  for (int i = c.lo(); i <= c.hi(); ++i) ranks.push_back(c.rank(i));
  for (int i = c.lo(); i < c.hi(); ++i) diffs.push_back(to_json(c.differential(i)));
  out["ranks"] = std::move(ranks);
  out["differentials"] = std::move(diffs);
  return out;
}

ChainComplex complex_from_json(const RingSpec& fallback, const Json& j, const std::string& path) {
  const RingSpec r = ring_or(fallback, j, path);
  auto [a, b] = support_from_json(field(j, "support", path), at(path, "support"));
  const Json& ranks_j = array(field(j, "ranks", path), at(path, "ranks"));
  const std::size_t len = static_cast<std::size_t>(b - a + 1);
  if (ranks_j.size() != len)
    throw FormatError(at(path, "ranks"), "support [" + std::to_string(a) + ", " + std::to_string(b) +
                                             "] needs " + std::to_string(len) + " ranks");
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k < len; ++k) ranks.push_back(count(ranks_j[k], at(at(path, "ranks"), k)));
  std::vector<Matrix> diffs;
  const Json& d = j.contains("differentials") ? array(j["differentials"], at(path, "differentials"))
                                              : Json::array();
  if (d.size() != (len == 0 ? 0 : len - 1))
    throw FormatError(at(path, "differentials"),
                      "expected " + std::to_string(len == 0 ? 0 : len - 1) + " matrices");
  for (std::size_t k = 0; k < d.size(); ++k)
    diffs.push_back(matrix_from_json(r, d[k], at(at(path, "differentials"), k)));
  return guarded(path, [&] { return ChainComplex(r, a, ranks, diffs); });
}

Json to_json(const ChainMap& f) {
  Json out;
  out["source"] = to_json(f.source());
  out["target"] = to_json(f.target());
  out["support"] = Json::array({f.source().lo(), f.source().hi()});
  out["components"] = components_json(f.source(), f);
  return out;
}

ChainMap chain_map_from_json(const RingSpec& r, const Json& j, const std::string& path) {
  ChainComplex s = complex_from_json(r, field(j, "source", path), at(path, "source"));
  ChainComplex t = complex_from_json(r, field(j, "target", path), at(path, "target"));
  auto comp = stored_components(r, j, path, [&](int i) { return std::make_pair(t.rank(i), s.rank(i)); });
  return guarded(path, [&] { return ChainMap(s, t, comp); });
}

Json to_json(const Homotopy& h) {
  Json out;
  out["source"] = to_json(h.source());
  out["target"] = to_json(h.target());
  out["support"] = Json::array({h.source().lo(), h.source().hi()});
  out["components"] = components_json(h.source(), h);
  return out;
}

Homotopy homotopy_from_json(const RingSpec& r, const Json& j, const std::string& path) {
  ChainComplex s = complex_from_json(r, field(j, "source", path), at(path, "source"));
  ChainComplex t = complex_from_json(r, field(j, "target", path), at(path, "target"));
  auto comp =
      stored_components(r, j, path, [&](int i) { return std::make_pair(t.rank(i - 1), s.rank(i)); });
  return guarded(path, [&] { return Homotopy(s, t, comp); });
}

Json to_json(const HomotopyEquivalence& e) {
  Json out;
  out["forward"] = to_json(e.forward);
  out["backward"] = to_json(e.backward);
  out["on_source"] = to_json(e.on_source);
  out["on_target"] = to_json(e.on_target);
  return out;
}

HomotopyEquivalence equivalence_from_json(const RingSpec& r, const Json& j,
                                          const std::string& path) {
  return HomotopyEquivalence{
      chain_map_from_json(r, field(j, "forward", path), at(path, "forward")),
      chain_map_from_json(r, field(j, "backward", path), at(path, "backward")),
      homotopy_from_json(r, field(j, "on_source", path), at(path, "on_source")),
      homotopy_from_json(r, field(j, "on_target", path), at(path, "on_target"))};
}

// ---------------------------------------------------------------- localization

Json to_json(const LocalizationSpec& s) {
  Json out;
  if (s.variant() == LocalizationSpec::Variant::MatrixFamily) {
    out["variant"] = "matrices";
    Json mats = Json::array();
    for (const auto& m : s.mats()) mats.push_back(to_json(m));
    out["mats"] = std::move(mats);
  } else {
    out["variant"] = "telescope";
    out["gens"] = to_json(s.gens());
  }
  return out;
}

LocalizationSpec spec_from_json(const RingSpec& fallback, const Json& j, const std::string& path) {
  const RingSpec r = ring_or(fallback, j, path);
  const Json& v = field(j, "variant", path);
  if (v == "matrices") {
    const Json& list = array(field(j, "mats", path), at(path, "mats"));
    std::vector<Matrix> mats;
    for (std::size_t k = 0; k < list.size(); ++k)
      mats.push_back(matrix_from_json(r, list[k], at(at(path, "mats"), k)));
    return guarded(path, [&] { return LocalizationSpec::matrices(r, mats); });
  }
  if (v == "telescope") {
    auto gens = elements_from_json(r, field(j, "gens", path), at(path, "gens"));
    return guarded(path, [&] { return LocalizationSpec::telescope(r, gens); });
  }
  throw FormatError(at(path, "variant"), "expected \"matrices\" or \"telescope\"");
}

// ---------------------------------------------------------------- certificates

Json to_json(const ContraCertificate& c) {
  Json out;
  out["verdict"] = c.verdict;
  out["kind"] = to_string(c.kind);
  out["s"] = to_json(c.s);
  out["exponent"] = c.exponent;
  if (c.element) out["element"] = to_json(*c.element);
  if (c.multiplier) out["multiplier"] = to_json(*c.multiplier);
  out["describe"] = c.describe();
  return out;
}

ContraCertificate certificate_from_json(const RingSpec& r, const Json& j, const std::string& path) {
  ContraCertificate c;
  const Json& v = field(j, "verdict", path);
  if (!v.is_boolean()) throw FormatError(at(path, "verdict"), "expected true or false");
  c.verdict = v.get<bool>();
  const Json& kind = field(j, "kind", path);
  bool found = false;
  for (auto k : {ContraCertificate::Kind::Nilpotent, ContraCertificate::Kind::ZeroElement,
                 ContraCertificate::Kind::HomWitness, ContraCertificate::Kind::ExtObstruction})
    if (kind == to_string(k)) {
      c.kind = k;
      found = true;
    }
  if (!found) throw FormatError(at(path, "kind"), "unknown certificate kind");
  c.s = element_from_json(r, field(j, "s", path), at(path, "s"));
  c.exponent = static_cast<unsigned>(count(field(j, "exponent", path), at(path, "exponent")));
  if (j.contains("element")) c.element = matrix_from_json(r, j["element"], at(path, "element"));
  if (j.contains("multiplier"))
    c.multiplier = element_from_json(r, j["multiplier"], at(path, "multiplier"));
  return c;
}

Json to_json(const BijectivityCertificate& c) {
  Json out;
  out["bijective"] = c.bijective;
  if (c.kernel_element) out["kernel_element"] = to_json(*c.kernel_element);
  if (c.cokernel_representative) out["cokernel_representative"] = to_json(*c.cokernel_representative);
  return out;
}

BijectivityCertificate bijectivity_from_json(const RingSpec& r, const Json& j,
                                             const std::string& path) {
  BijectivityCertificate c;
  const Json& v = field(j, "bijective", path);
  if (!v.is_boolean()) throw FormatError(at(path, "bijective"), "expected true or false");
  c.bijective = v.get<bool>();
  if (j.contains("kernel_element"))
    c.kernel_element = matrix_from_json(r, j["kernel_element"], at(path, "kernel_element"));
  if (j.contains("cokernel_representative"))
    c.cokernel_representative =
        matrix_from_json(r, j["cokernel_representative"], at(path, "cokernel_representative"));
  return c;
}

// ---------------------------------------------------------------- equality

bool same(const FpModule& a, const FpModule& b) {
  return a.spec() == b.spec() && a.generators() == b.generators() && a.relations() == b.relations();
}

bool same(const ChainComplex& a, const ChainComplex& b) {
  if (!(a.spec() == b.spec()) || a.lo() != b.lo() || a.hi() != b.hi()) return false;
  for (int i = a.lo(); i <= a.hi(); ++i)
    if (a.rank(i) != b.rank(i) || !(a.differential(i) == b.differential(i))) return false;
  return true;
}

bool same(const ChainMap& a, const ChainMap& b) {
  if (!same(a.source(), b.source()) || !same(a.target(), b.target())) return false;
  for (int i = a.source().lo(); i <= a.source().hi(); ++i)
    if (!(a.component(i) == b.component(i))) return false;
  return true;
}

bool same(const ModuleHom& a, const ModuleHom& b) {
  return same(a.source(), b.source()) && same(a.target(), b.target()) && a.matrix() == b.matrix();
}

bool same(const LocalizationSpec& a, const LocalizationSpec& b) {
  return a.variant() == b.variant() && a.ring() == b.ring() && a.mats() == b.mats() &&
         a.gens() == b.gens();
}

bool same(const ShortExactSequence& a, const ShortExactSequence& b) {
  return same(a.inclusion, b.inclusion) && same(a.projection, b.projection);
}

}  // namespace weightkit::io
