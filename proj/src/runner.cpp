#include "weightkit/runner.hpp"

#include <chrono>
#include <functional>

#include "weightkit/battery.hpp"
#include "weightkit/smith.hpp"

namespace weightkit {

using io::FormatError;
using io::Json;
using io::to_json;

namespace {

constexpr unsigned kDefaultLevel = 6;
constexpr std::uint64_t kDefaultSeed = 1;

Json range_json(const std::optional<std::pair<int, int>>& r) {
  if (!r) return nullptr;
  return Json::array({r->first, r->second});
}

bool smith_holds(const Matrix& a, const Matrix& u, const Matrix& d, const Matrix& v,
                 const Matrix& u_inv, const Matrix& v_inv) {
  const RingSpec& spec = a.spec();
  if (u.rows() != a.rows() || v.cols() != a.cols() || d.rows() != a.rows() || d.cols() != a.cols())
    return false;
  if (!(u * a * v == d)) return false;
  if (!(u * u_inv == Matrix::identity(spec, a.rows()))) return false;
  if (!(v * v_inv == Matrix::identity(spec, a.cols()))) return false;
  std::vector<RingElement> diag;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && !d(i, j).is_zero()) return false;
  bool zeros = false;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
    const RingElement& e = d(i, i);
    if (e.is_zero()) {
      zeros = true;
      continue;
    }
    if (zeros || !(e == e.normalized())) return false;
    if (!diag.empty() && !divides(diag.back(), e)) return false;
    diag.push_back(e);
  }
  return true;
}

// A failing bijectivity witness for N^b -> N^a, sigma^T acting blockwise.
bool bijectivity_witness_holds(const FpModule& n, const Matrix& sigma,
                               const BijectivityCertificate& cert) {
  if (cert.bijective || (!cert.kernel_element && !cert.cokernel_representative)) return false;
  ModuleHom h(power(n, sigma.rows()), power(n, sigma.cols()),
              kronecker(sigma.transpose(), Matrix::identity(n.spec(), n.generators())));
  if (cert.kernel_element) {
    const Matrix& x = *cert.kernel_element;
    if (x.rows() != h.source().generators() || x.cols() != 1) return false;
    if (h.source().is_zero_element(x) || !h.target().is_zero_element(h.apply(x))) return false;
  }
  if (cert.cokernel_representative) {
    const Matrix& y = *cert.cokernel_representative;
    if (y.rows() != h.target().generators() || y.cols() != 1) return false;
    if (cokernel(h).is_zero_element(y)) return false;
  }
  return true;
}

bool verdict_matches_kind(const ContraCertificate& c) {
  const bool positive = c.kind == ContraCertificate::Kind::Nilpotent ||
                        c.kind == ContraCertificate::Kind::ZeroElement;
  return c.verdict == positive;
}

struct Context {
  const InputDocument& doc;
  const RunOptions& options;
  Json inputs = Json::object();
  Json result = Json::object();
  Json checks = Json::array();
  bool passed = true;

  const RingSpec& ring() const { return doc.ring; }
  const Json& args() const { return doc.command.args; }
  bool has(const std::string& name) const { return args().contains(name); }

  void check(const std::string& name, bool ok) {
    Json c;
    c["name"] = name;
    c["passed"] = ok;
    checks.push_back(std::move(c));
    passed = passed && ok;
  }

  template <class T>
  const T& get(const std::string& arg) {
    const std::string name = args()[arg].get<std::string>();
    const Declaration& d = declaration(doc, name);
    Json j = to_json(d);
    j["name"] = name;
    inputs[arg] = std::move(j);
    return std::get<T>(d.value);
  }

  template <class T>
  std::vector<T> get_list(const std::string& arg) {
    std::vector<T> out;
    Json list = Json::array();
    for (const auto& n : args()[arg]) {
      const Declaration& d = declaration(doc, n.get<std::string>());
      Json j = to_json(d);
      j["name"] = n;
      list.push_back(std::move(j));
      out.push_back(std::get<T>(d.value));
    }
    inputs[arg] = std::move(list);
    return out;
  }

  RingElement element(const std::string& arg) const {
    return io::element_from_json(ring(), args()[arg], "command.args." + arg);
  }
  std::vector<RingElement> elements(const std::string& arg) const {
    return io::elements_from_json(ring(), args()[arg], "command.args." + arg);
  }
  long integer(const std::string& arg, long fallback) const {
    return has(arg) ? args()[arg].get<long>() : fallback;
  }
  std::size_t count(const std::string& arg, long fallback) const {
    const long v = integer(arg, fallback);
    if (v < 0) throw FormatError("command.args." + arg, "must be nonnegative");
    return static_cast<std::size_t>(v);
  }
  unsigned level() const { return options.level.value_or(kDefaultLevel); }
  std::uint64_t seed() const { return options.seed.value_or(kDefaultSeed); }
};

// ---------------------------------------------------------------- linear algebra

void run_snf(Context& c) {
  const Matrix& a = c.get<Matrix>("matrix");
  const SmithDecomposition s = smith_normal_form(a);
  c.result["U"] = to_json(s.U);
  c.result["D"] = to_json(s.D);
  c.result["V"] = to_json(s.V);
  c.result["U_inv"] = to_json(s.U_inv);
  c.result["V_inv"] = to_json(s.V_inv);
  c.result["invariant_factors"] = to_json(s.invariant_factors);
  c.check("U A V = D with unimodular U, V and a divisibility chain",
          smith_holds(a, s.U, s.D, s.V, s.U_inv, s.V_inv));
}

void run_solve(Context& c) {
  const Matrix& a = c.get<Matrix>("matrix");
  const Matrix& b = c.get<Matrix>("rhs");
  if (a.rows() != b.rows())
    throw Error("solve: matrix has " + std::to_string(a.rows()) + " rows, rhs has " +
                std::to_string(b.rows()));
  LinearSystem sys(a);
  auto x = sys.solve(b);
  c.result["solvable"] = x.has_value();
  c.result["solution"] = x ? to_json(*x) : Json(nullptr);
  c.result["kernel"] = to_json(sys.kernel());
  if (x) c.check("A X = B", a * *x == b);
  c.check("A K = 0", (a * sys.kernel()).is_zero());
}

// ---------------------------------------------------------------- modules

void run_module_nf(Context& c) {
  const FpModule& m = c.get<FpModule>("module");
  c.result["module"] = io::module_report(m);
  c.result["to_normal"] = to_json(m.to_normal());
  c.result["from_normal"] = to_json(m.from_normal());
  const auto orders = m.summand_orders();
  bool ok = true;
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const Matrix g = m.from_normal().column(j);
    ok = ok && m.is_zero_element(orders[j] * g) && !m.is_zero_element(g);
  }
  c.check("normal generators are nonzero and killed by their orders", ok);
}

template <class Table, class Presented>
void run_bifunctor(Context& c, Table table, Presented presented) {
  const FpModule& l = c.get<FpModule>("left");
  const FpModule& r = c.get<FpModule>("right");
  const FpModule value = table(l, r);
  c.result["module"] = io::module_report(value);
  c.result["describe"] = value.describe();
  c.check("summand table agrees with the presentation computation",
          is_isomorphic(value, presented(l, r)));
}

void run_pd(Context& c) {
  const FpModule& m = c.get<FpModule>("module");
  const auto pd = projective_dimension(m);
  c.result["pd"] = to_string(pd);
  c.result["describe"] = to_string(pd);
}

// ---------------------------------------------------------------- complexes

void run_truncate_w(Context& c) {
  const ChainComplex& m = c.get<ChainComplex>("complex");
  const int n = static_cast<int>(c.integer("n", 0));
  const WeightDecomposition w = weight_truncate(m, n);
  const auto lr = weight_range(w.lower), rr = weight_range(w.upper);
  c.result["lower"] = to_json(w.lower);
  c.result["upper"] = to_json(w.upper);
  c.result["inclusion"] = to_json(w.inclusion);
  c.result["projection"] = to_json(w.projection);
  c.result["lower_weight_range"] = range_json(lr);
  c.result["upper_weight_range"] = range_json(rr);
  c.check("lower piece in C_{w<=n}", !lr || lr->second <= n);
  c.check("upper piece in C_{w>=n+1}", !rr || rr->first >= n + 1);
  c.check("cone(inclusion) ~ upper piece", homotopy_equivalent(cone(w.inclusion), w.upper));
  c.check("Hom_K(lower, upper) = 0", hom_upto_homotopy(w.lower, w.upper).is_zero());
}

void run_truncate_t(Context& c) {
  const ChainComplex& m = c.get<ChainComplex>("complex");
  const int n = static_cast<int>(c.integer("n", 0));
  const int cut = -n;
  const TDecomposition t = t_truncate(m, n);
  c.result["lower"] = to_json(t.lower);
  c.result["upper"] = to_json(t.upper);
  c.result["inclusion"] = to_json(t.inclusion);
  c.result["projection"] = to_json(t.projection);
  Json lh = Json::array(), uh = Json::array();
  bool lower_ok = true, upper_ok = true;
  const int lo = std::min({m.lo(), t.lower.lo(), t.upper.lo()});
  const int hi = std::max({m.hi(), t.lower.hi(), t.upper.hi()});
  for (int i = lo; i <= hi; ++i) {
    const FpModule hm = homology(m, i), hl = homology(t.lower, i), hu = homology(t.upper, i);
    if (!hl.is_zero()) lh.push_back(Json{{"degree", i}, {"module", hl.describe()}});
    if (!hu.is_zero()) uh.push_back(Json{{"degree", i}, {"module", hu.describe()}});
    lower_ok = lower_ok && is_isomorphic(hl, i <= cut ? hm : FpModule::zero(m.spec()));
    upper_ok = upper_ok && is_isomorphic(hu, i > cut ? hm : FpModule::zero(m.spec()));
  }
  c.result["lower_homology"] = std::move(lh);
  c.result["upper_homology"] = std::move(uh);
  c.check("lower piece carries exactly the cohomology in degrees <= -n", lower_ok);
  c.check("upper piece carries exactly the cohomology in degrees >= -n+1", upper_ok);
  c.check("cone(inclusion) ~ upper piece", homotopy_equivalent(cone(t.inclusion), t.upper));
}

void run_cone(Context& c) {
  const ChainMap& f = c.get<ChainMap>("map");
  c.result["cone"] = to_json(cone(f));
}

void run_minimize(Context& c) {
  const ChainComplex& m = c.get<ChainComplex>("complex");
  const Minimization r = minimize(m);
  c.result["minimal"] = to_json(r.minimal);
  c.result["equivalence"] = to_json(r.equivalence);
  bool no_units = true;
  for (int i = r.minimal.lo(); i < r.minimal.hi(); ++i)
    for (const auto& f : smith_normal_form(r.minimal.differential(i)).invariant_factors)
      no_units = no_units && !f.is_unit();
  c.check("minimal differentials have no unit invariant factor", no_units);
  c.check("equivalence verifies", r.equivalence.verify());
}

void run_heq(Context& c) {
  const ChainComplex& m = c.get<ChainComplex>("complex");
  const ChainComplex& n = c.get<ChainComplex>("other");
  const auto witness = homotopy_equivalence(m, n);
  const bool by_homology = homotopy_equivalent(m, n);
  c.result["verdict"] = witness.has_value();
  c.result["witness"] = witness ? to_json(*witness) : Json(nullptr);
  if (witness) c.check("witness verifies", witness->verify());
  c.check("agrees with the cohomology comparison", by_homology == witness.has_value());
}

void run_homology(Context& c) {
  const ChainComplex& m = c.get<ChainComplex>("complex");
  Json degrees = Json::array();
  for (int i = m.lo(); i <= m.hi(); ++i) {
    Json d;
    d["degree"] = i;
    d["module"] = io::module_report(homology(m, i));
    degrees.push_back(std::move(d));
  }
  c.result["degrees"] = std::move(degrees);
}

void run_weight_range(Context& c) {
  const ChainComplex& m = c.get<ChainComplex>("complex");
  c.result["weight_range"] = range_json(weight_range(m));
}

// ---------------------------------------------------------------- contramodules

void run_contra(Context& c) {
  const FpModule& m = c.get<FpModule>("module");
  const ContraCertificate cert = is_s_contramodule(m, c.element("s"));
  c.result["verdict"] = cert.verdict;
  c.result["certificate"] = to_json(cert);
  c.check("certificate re-verifies", verify_certificate(m, cert));
}

void run_ideal_contra(Context& c) {
  const FpModule& m = c.get<FpModule>("module");
  const IdealCertificate cert = is_ideal_contramodule(m, c.elements("gens"));
  c.result["verdict"] = cert.verdict;
  c.result["vacuous"] = cert.vacuous;
  c.result["failing"] = cert.failing ? Json(*cert.failing) : Json(nullptr);
  Json per = Json::array();
  bool ok = true;
  for (const auto& g : cert.per_generator) {
    per.push_back(to_json(g));
    ok = ok && verify_certificate(m, g);
  }
  c.result["per_generator"] = std::move(per);
  c.result["describe"] = cert.describe();
  c.check("every generator certificate re-verifies", ok);
}

Json completed_json(const CompletedModule& k) {
  Json out;
  out["s"] = to_json(k.s);
  out["completed_rank"] = k.completed_rank;
  out["finite_part"] = io::module_report(k.finite_part);
  out["killed_part_record"] = io::module_report(k.killed_part);
  out["exponent"] = k.exponent;
  out["describe"] = k.describe();
  return out;
}

void run_complete(Context& c) {
  const FpModule& m = c.get<FpModule>("module");
  const RingElement s = c.element("s");
  const CompletedModule k = delta_completion(m, s);
  c.result = completed_json(k);
  if (!s.is_zero() && !s.is_unit()) {
    const unsigned e = std::max(k.exponent, 1u);
    const FpModule direct(m.spec(), m.generators(),
                          vstack(m.relations(), s.pow(e) * Matrix::identity(m.spec(), m.generators())));
    c.check("completion reduced mod s^e equals C / s^e C", is_isomorphic(reduce_completed(k, e), direct));
  }
}

void run_reduce(Context& c) {
  const FpModule& m = c.get<FpModule>("module");
  const RingElement s = c.element("s");
  const long n = c.integer("n", c.level());
  if (n < 0) throw FormatError("command.args.n", "must be nonnegative");
  const FpModule r = reduce_completed(delta_completion(m, s), static_cast<unsigned>(n));
  c.result["level"] = n;
  c.result["module"] = io::module_report(r);
  c.result["describe"] = r.describe();
}

void run_flatness(Context& c) {
  const RingElement s = c.element("s");
  std::vector<FpModule> samples;
  if (c.has("modules")) {
    samples = c.get_list<FpModule>("modules");
  } else {
    Rng rng(c.seed());
    std::uniform_int_distribution<int> gens(1, 3), rels(0, 3);
    const std::size_t want = c.count("count", 50);
    while (samples.size() < want) {
      const std::size_t g = gens(rng);
      samples.push_back(FpModule(c.ring(), g, random_matrix(c.ring(), rels(rng), g, rng, 8)));
    }
  }
  const FlatnessReport r = verify_flatness(s, samples, c.count("max_length", 4));
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j;
    j["module"] = e.module;
    j["tor1_zero"] = e.tor1_zero;
    j["lengths"] = e.lengths;
    j["proof"] = e.proof;
    entries.push_back(std::move(j));
  }
  c.result["s"] = to_json(s);
  c.result["multiplication"] = r.multiplication;
  c.result["entries"] = std::move(entries);
  c.result["verdict"] = r.passed();
  c.check("Tor_1(R[1/s], M) = 0 for every sample", r.passed());
}

// ---------------------------------------------------------------- hearts

void run_localize(Context& c) {
  const LocalizedRing u = universal_localization(c.get<LocalizationSpec>("spec"));
  c.result["ring"] = u.describe();
  c.result["inverted"] = to_json(u.inverted());
  c.result["describe"] = u.describe();
}

void run_heart(Context& c) {
  const FpModule& m = c.get<FpModule>("module");
  const LocalizationSpec& spec = c.get<LocalizationSpec>("spec");
  const HeartVerdict v = heart_membership(m, spec);
  c.result["verdict"] = v.member;
  c.result["variant"] = spec.variant() == LocalizationSpec::Variant::Telescope ? "telescope" : "matrices";
  c.result["failing"] = v.failing ? Json(*v.failing) : Json(nullptr);
  if (v.map_witness) c.result["witness"] = to_json(*v.map_witness);
  if (v.contra) {
    Json per = Json::array();
    bool ok = true;
    for (const auto& g : v.contra->per_generator) {
      per.push_back(to_json(g));
      ok = ok && verify_certificate(m, g);
    }
    c.result["per_generator"] = std::move(per);
    c.check("every generator certificate re-verifies", ok);
  }
  if (v.map_witness)
    c.check("witness re-verifies against the blockwise map",
            bijectivity_witness_holds(m, spec.mats()[*v.failing], *v.map_witness));
  c.result["describe"] = v.describe();
}

void run_heart_cone(Context& c) {
  const FpModule& m = c.get<FpModule>("module");
  const ConeVerdict v = heart_membership_via_cone(m, c.get<LocalizationSpec>("spec"));
  c.result["verdict"] = v.member;
  c.result["failing"] = v.failing ? Json(*v.failing) : Json(nullptr);
  c.result["reason"] = v.reason;
}

void run_local_complex(Context& c) {
  const ChainComplex& m = c.get<ChainComplex>("complex");
  const LocalizationSpec& spec = c.get<LocalizationSpec>("spec");
  const LocalComplexVerdict v = is_local_complex(m, spec);
  Json per = Json::array();
  for (const auto& [degree, hv] : v.per_degree) {
    Json j;
    j["degree"] = degree;
    j["homology"] = homology(m, degree).describe();
    j["verdict"] = hv.member;
    j["describe"] = hv.describe();
    per.push_back(std::move(j));
  }
  c.result["verdict"] = v.local;
  c.result["per_degree"] = std::move(per);
}

void run_square(Context& c) {
  const long k = c.integer("k", 0);
  if (k < 0) throw FormatError("command.args.k", "must be nonnegative");
  const SquareReport r = verify_square(static_cast<std::size_t>(k), c.get<LocalizationSpec>("spec"),
                                       c.get_list<FpModule>("tests"), c.level());
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j;
    j["test"] = e.test;
    j["skipped"] = e.skipped;
    j["passed"] = e.passed;
    j["checks"] = e.checks;
    entries.push_back(std::move(j));
  }
  c.result["rank"] = r.rank;
  c.result["max_level"] = r.max_level;
  c.result["entries"] = std::move(entries);
  c.result["verdict"] = r.passed();
  c.check("both paths of the square agree", r.passed());
}

void run_projectives(Context& c) {
  const LocalizationSpec& spec = c.get<LocalizationSpec>("spec");
  std::vector<ShortExactSequence> seqs;
  if (c.has("sequences")) {
    seqs = c.get_list<ShortExactSequence>("sequences");
  } else {
    Rng rng(c.seed());
    seqs = sample_heart_sequences(spec, c.count("count", 20), rng);
    Json sampled = Json::array();
    for (const auto& s : seqs) sampled.push_back(to_json(s));
    c.result["sampled_sequences"] = std::move(sampled);
  }
  const ProjectivityReport r = verify_heart_projectives(spec, c.count("k_max", 1), seqs);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j;
    j["sequence"] = e.sequence;
    j["rank"] = e.rank;
    j["generator"] = to_json(e.generator);
    j["exact"] = e.exact;
    j["image"] = e.image;
    entries.push_back(std::move(j));
  }
  c.result["entries"] = std::move(entries);
  c.result["verdict"] = r.passed();
  c.check("Hom(completed free, -) keeps every sample exact", r.passed());
}

void run_verify_axioms(Context& c) {
  std::vector<ChainComplex> sample;
  if (c.has("complexes")) {
    sample = c.get_list<ChainComplex>("complexes");
  } else {
    Rng rng(c.seed());
    std::uniform_int_distribution<int> lo(-3, 1), length(1, 4);
    const std::size_t want = c.count("count", 200);
    for (std::size_t i = 0; i < want; ++i)
      sample.push_back(random_complex(c.ring(), rng, lo(rng), length(rng), 3, 4));
  }
  const int n_lo = static_cast<int>(c.integer("n_lo", -5));
  const int n_hi = static_cast<int>(c.integer("n_hi", 4));
  const WeightAxiomReport r = verify_weight_axioms(sample, n_lo, n_hi);
  c.result["samples"] = sample.size();
  c.result["n_range"] = Json::array({n_lo, n_hi});
  c.result["checks"] = r.checks;
  c.result["violations"] = r.violations;
  c.result["verdict"] = r.passed();
  c.check("weight structure axioms hold on the sample", r.passed());
}

void run_verify_all(Context& c) {
  BatteryOptions options;
  options.seed = c.seed();
  options.max_level = c.level();
  Json criteria = Json::array();
  for (const auto& r : run_battery(options)) {
    Json j;
    j["id"] = r.id;
    j["title"] = r.title;
    j["passed"] = r.passed;
    j["cases"] = r.cases;
    j["failures"] = r.failures;
    j["notes"] = r.notes;
    criteria.push_back(std::move(j));
    c.check("criterion " + std::to_string(r.id) + ": " + r.title, r.passed);
  }
  c.result["criteria"] = std::move(criteria);
}

const std::map<std::string, std::function<void(Context&)>>& dispatch() {
  static const std::map<std::string, std::function<void(Context&)>> table = {
      {"snf", run_snf},
      {"solve", run_solve},
      {"module-nf", run_module_nf},
      {"hom", [](Context& c) { run_bifunctor(c, hom_module, hom_presented); }},
      {"ext1", [](Context& c) { run_bifunctor(c, ext1, ext1_presented); }},
      {"tor1", [](Context& c) { run_bifunctor(c, tor1, tor1_presented); }},
      {"pd", run_pd},
      {"truncate-w", run_truncate_w},
      {"truncate-t", run_truncate_t},
      {"cone", run_cone},
      {"minimize", run_minimize},
      {"heq", run_heq},
      {"homology", run_homology},
      {"weight-range", run_weight_range},
      {"contra", run_contra},
      {"ideal-contra", run_ideal_contra},
      {"complete", run_complete},
      {"reduce", run_reduce},
      {"flatness", run_flatness},
      {"localize", run_localize},
      {"heart", run_heart},
      {"heart-cone", run_heart_cone},
      {"local-complex", run_local_complex},
      {"square", run_square},
      {"projectives", run_projectives},
      {"verify-axioms", run_verify_axioms},
      {"verify-all", run_verify_all},
  };
  return table;
}

Json engine_json() {
  Json e;
  e["name"] = kEngineName;
  e["version"] = kEngineVersion;
  return e;
}

Report finish(Json command, Json inputs, Json result, Json checks, bool passed,
              std::chrono::steady_clock::time_point start) {
  Report r;
  r.passed = passed;
  r.body["engine"] = engine_json();
  r.body["conventions"] = conventions();
  r.body["command"] = std::move(command);
  r.body["inputs"] = std::move(inputs);
  r.body["result"] = std::move(result);
  r.body["checks"] = std::move(checks);
  r.body["passed"] = passed;
  Json timing;
  timing["seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.body["timing"] = std::move(timing);
  return r;
}

// ---------------------------------------------------------------- certificates

const Json& need(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(path, "missing field \"" + key + "\"");
  return j[key];
}

FpModule input_module(const RingSpec& r, const Json& inputs, const std::string& arg) {
  return io::module_from_json(r, need(inputs, arg, "inputs"), "inputs." + arg);
}

}  // namespace

Json conventions() {
  Json c;
  c["grading"] = "cohomological: differentials raise degree, d^i : M^i -> M^(i+1)";
  c["shift"] = "(M[k])^i = M^(i+k) with differential (-1)^k d";
  c["cone"] = "cone(f)^i = Y^i + X^(i+1), d = [[d_Y, f], [0, -d_X]]";
  c["homotopy"] = "h^i : X^i -> Y^(i-1), f - g = d h + h d";
  c["weight_truncation"] = "n: L = degrees >= -n in C_{w<=n}, R = degrees <= -n-1 in C_{w>=n+1}";
  c["t_truncation"] = "n: Lt carries the cohomology in degrees <= -n, Rt in degrees >= -n+1";
  c["weight_range"] = "a minimal complex supported on [a, b] has weight range [-b, -a]";
  c["matrices"] = "maps act on column vectors: R^a -> R^b is a b x a matrix";
  c["presentations"] = "relations are rows: an r x g matrix presents R^g modulo its row span";
  c["normalization"] = "integers nonnegative, polynomials monic, nonzero field elements 1";
  return c;
}

Report run(const InputDocument& doc, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Context c{doc, options};
  auto it = dispatch().find(doc.command.verb);
  if (it == dispatch().end()) throw FormatError("command.verb", "unknown verb \"" + doc.command.verb + "\"");
  it->second(c);
  if (doc.command.expect) {
    for (const auto& [key, want] : doc.command.expect->items()) {
      const bool ok = c.result.contains(key) && c.result[key] == want;
      c.check("expected " + key + " = " + want.dump(), ok);
    }
  }
  Json command;
  command["verb"] = doc.command.verb;
  command["ring"] = to_json(doc.ring);
  command["args"] = doc.command.args;
  if (doc.command.expect) command["expect"] = *doc.command.expect;
  command["level"] = c.level();
  command["seed"] = c.seed();
  return finish(std::move(command), std::move(c.inputs), std::move(c.result), std::move(c.checks),
                c.passed, start);
}

Report check_certificate(const Json& report) {
  const auto start = std::chrono::steady_clock::now();
  const Json& command = need(report, "command", "");
  const std::string verb = need(command, "verb", "command").get<std::string>();
  const RingSpec r = io::ring_from_json(need(command, "ring", "command"), "command.ring");
  const Json& inputs = need(report, "inputs", "");
  const Json& result = need(report, "result", "");
  Json checks = Json::array();
  bool passed = true;
  auto check = [&](const std::string& name, bool ok) {
    Json c;
    c["name"] = name;
    c["passed"] = ok;
    checks.push_back(std::move(c));
    passed = passed && ok;
  };
  auto matrix = [&](const Json& j, const std::string& key, const std::string& path) {
    return io::matrix_from_json(r, need(j, key, path), path + "." + key);
  };

  if (verb == "snf") {
    const Matrix a = io::matrix_from_json(r, need(inputs, "matrix", "inputs"), "inputs.matrix");
    check("U A V = D with unimodular U, V and a divisibility chain",
          smith_holds(a, matrix(result, "U", "result"), matrix(result, "D", "result"),
                      matrix(result, "V", "result"), matrix(result, "U_inv", "result"),
                      matrix(result, "V_inv", "result")));
  } else if (verb == "solve") {
    const Matrix a = io::matrix_from_json(r, need(inputs, "matrix", "inputs"), "inputs.matrix");
    const Matrix b = io::matrix_from_json(r, need(inputs, "rhs", "inputs"), "inputs.rhs");
    if (!need(result, "solution", "result").is_null())
      check("A X = B", a * matrix(result, "solution", "result") == b);
    check("A K = 0", (a * matrix(result, "kernel", "result")).is_zero());
  } else if (verb == "contra") {
    const FpModule m = input_module(r, inputs, "module");
    const ContraCertificate cert =
        io::certificate_from_json(r, need(result, "certificate", "result"), "result.certificate");
    check("certificate re-verifies", verify_certificate(m, cert));
    check("verdict matches the certificate kind", verdict_matches_kind(cert));
    check("reported verdict matches the certificate", need(result, "verdict", "result") == cert.verdict);
  } else if (verb == "ideal-contra" || (verb == "heart" && result.contains("per_generator"))) {
    const FpModule m = input_module(r, inputs, "module");
    const Json& per = need(result, "per_generator", "result");
    bool all = true;
    for (std::size_t k = 0; k < per.size(); ++k) {
      const ContraCertificate cert =
          io::certificate_from_json(r, per[k], "result.per_generator[" + std::to_string(k) + "]");
      check("generator " + std::to_string(k) + " certificate re-verifies", verify_certificate(m, cert));
      check("generator " + std::to_string(k) + " verdict matches its kind", verdict_matches_kind(cert));
      all = all && cert.verdict;
    }
    check("verdict is the conjunction over the generators", need(result, "verdict", "result") == all);
  } else if (verb == "heart") {
    const FpModule m = input_module(r, inputs, "module");
    const LocalizationSpec spec = io::spec_from_json(r, need(inputs, "spec", "inputs"), "inputs.spec");
    if (result.contains("witness")) {
      const std::size_t k = need(result, "failing", "result").get<std::size_t>();
      if (k >= spec.mats().size()) throw FormatError("result.failing", "no such matrix");
      const BijectivityCertificate cert =
          io::bijectivity_from_json(r, result["witness"], "result.witness");
      check("witness re-verifies against the blockwise map",
            bijectivity_witness_holds(m, spec.mats()[k], cert));
      check("reported verdict is false", need(result, "verdict", "result") == false);
    } else {
      check("membership recomputes to the reported verdict",
            need(result, "verdict", "result") == heart_membership(m, spec).member);
    }
  } else if (verb == "heq") {
    const ChainComplex a = io::complex_from_json(r, need(inputs, "complex", "inputs"), "inputs.complex");
    const ChainComplex b = io::complex_from_json(r, need(inputs, "other", "inputs"), "inputs.other");
    const Json& w = need(result, "witness", "result");
    if (w.is_null()) {
      check("no witness: cohomology differs", !homotopy_equivalent(a, b));
    } else {
      const HomotopyEquivalence e = io::equivalence_from_json(r, w, "result.witness");
      check("witness runs between the inputs", io::same(e.source(), a) && io::same(e.target(), b));
      check("witness verifies", e.verify());
    }
  } else if (verb == "minimize") {
    const ChainComplex a = io::complex_from_json(r, need(inputs, "complex", "inputs"), "inputs.complex");
    const ChainComplex m = io::complex_from_json(r, need(result, "minimal", "result"), "result.minimal");
    const HomotopyEquivalence e =
        io::equivalence_from_json(r, need(result, "equivalence", "result"), "result.equivalence");
    check("equivalence runs from the input to the minimal complex",
          io::same(e.source(), a) && io::same(e.target(), m));
    check("equivalence verifies", e.verify());
  } else {
    throw FormatError("command.verb", "reports of verb \"" + verb + "\" carry no certificate");
  }
  Json echo;
  echo["verb"] = "check-certificate";
  echo["checked_verb"] = verb;
  echo["ring"] = to_json(r);
  Json out_inputs;
  out_inputs["report"] = report;
  out_inputs["report"].erase("timing");
  Json res;
  res["verdict"] = passed;
  return finish(std::move(echo), std::move(out_inputs), std::move(res), std::move(checks), passed, start);
}

}  // namespace weightkit
