// JSON forms of rings, elements, matrices, modules, complexes, maps,
// localization data and certificates.
#pragma once

#include <json.hpp>

#include "weightkit/complexes.hpp"
#include "weightkit/contra.hpp"
#include "weightkit/hearts.hpp"

namespace weightkit::io {

using Json = nlohmann::ordered_json;

/// Raised for documents that parse as JSON but do not describe a value.
/// `path` locates the offending field, e.g. "declarations.C.differentials[1]".
class FormatError : public Error {
 public:
  FormatError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Parses JSON text; syntax errors become FormatError with line and column.
Json parse_text(const std::string& text);

// Every reader takes the path of the value for error messages.

Json to_json(const RingSpec& r);
RingSpec ring_from_json(const Json& j, const std::string& path);

/// Integers and residues as JSON numbers when they fit, otherwise the
/// canonical string ("3/4", "x^2 + 1").
Json to_json(const RingElement& e);
RingElement element_from_json(const RingSpec& r, const Json& j, const std::string& path);
Json to_json(const std::vector<RingElement>& v);
std::vector<RingElement> elements_from_json(const RingSpec& r, const Json& j,
                                            const std::string& path);

/// {"rows", "cols", "entries"}; a nonempty list of rows is also accepted.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const RingSpec& r, const Json& j, const std::string& path);

/// {"ring", "generators", "relations"}; `ring` is optional on input.
Json to_json(const FpModule& m);
FpModule module_from_json(const RingSpec& r, const Json& j, const std::string& path);
/// Presentation plus normal form and a readable description.
Json module_report(const FpModule& m);

/// {"ring", "support": [a, b], "ranks", "differentials"}.
Json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const RingSpec& r, const Json& j, const std::string& path);

/// {"source", "target", "support", "components"}; components are listed
/// over the support of the stored degree range of the source.
Json to_json(const ChainMap& f);
ChainMap chain_map_from_json(const RingSpec& r, const Json& j, const std::string& path);
Json to_json(const Homotopy& h);
Homotopy homotopy_from_json(const RingSpec& r, const Json& j, const std::string& path);
Json to_json(const HomotopyEquivalence& e);
HomotopyEquivalence equivalence_from_json(const RingSpec& r, const Json& j,
                                          const std::string& path);

/// {"source", "target", "matrix"}.
Json to_json(const ModuleHom& h);
ModuleHom module_hom_from_json(const RingSpec& r, const Json& j, const std::string& path);
Json to_json(const ShortExactSequence& s);
ShortExactSequence ses_from_json(const RingSpec& r, const Json& j, const std::string& path);

/// {"variant": "matrices", "mats"} or {"variant": "telescope", "gens"}.
Json to_json(const LocalizationSpec& s);
LocalizationSpec spec_from_json(const RingSpec& r, const Json& j, const std::string& path);

Json to_json(const ContraCertificate& c);
ContraCertificate certificate_from_json(const RingSpec& r, const Json& j,
                                        const std::string& path);
Json to_json(const BijectivityCertificate& c);
BijectivityCertificate bijectivity_from_json(const RingSpec& r, const Json& j,
                                             const std::string& path);

/// Exact structural equality (same presentation, not isomorphism).
bool same(const FpModule& a, const FpModule& b);
bool same(const ChainComplex& a, const ChainComplex& b);
bool same(const ChainMap& a, const ChainMap& b);
bool same(const ModuleHom& a, const ModuleHom& b);
bool same(const LocalizationSpec& a, const LocalizationSpec& b);
bool same(const ShortExactSequence& a, const ShortExactSequence& b);

}  // namespace weightkit::io
