#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "weightkit/runner.hpp"
#include "weightkit/sampling.hpp"

using namespace weightkit;
using io::Json;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const io::FormatError& e) {
    return e.what();
  }
  return "";
}

Json strip_timing(Json report) {
  report.erase("timing");
  return report;
}

Report run_text(const std::string& text, RunOptions options = {}) {
  return run(parse_document(text), options);
}

const char* kContraZ8 = R"({
  "ring": "Z",
  "declarations": {"M": {"type": "module", "generators": 1, "relations": [[8]]}},
  "command": {"verb": "contra", "args": {"module": "M", "s": 2}}
})";

const char* kSnfIdentity = R"({
  "ring": "Z",
  "declarations": {"I": {"type": "matrix", "rows": 3, "cols": 3,
                         "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}},
  "command": {"verb": "snf", "args": {"matrix": "I"}}
})";

const char* kHeartZ = R"({
  "ring": "Z",
  "declarations": {
    "M": {"type": "module", "generators": 1, "relations": []},
    "S": {"type": "spec", "variant": "matrices", "mats": [[[2]]]}
  },
  "command": {"verb": "heart", "args": {"module": "M", "spec": "S"}}
})";

// ---------------------------------------------------------------- parsing

TEST(Parse, MinimalSnfDocument) {
  const InputDocument doc = parse_document(kSnfIdentity);
  EXPECT_EQ(doc.ring, RingSpec::integers());
  EXPECT_EQ(doc.command.verb, "snf");
  EXPECT_EQ(declared<Matrix>(doc, "I"), Matrix::identity(doc.ring, 3));
}

TEST(Parse, RejectsDifferentialWithNonzeroSquare) {
  const std::string msg = error_of(R"({
    "ring": "Z",
    "declarations": {"K": {"type": "complex", "support": [0, 2], "ranks": [1, 1, 1],
                           "differentials": [[[1]], [[1]]]}},
    "command": {"verb": "homology", "args": {"complex": "K"}}
  })");
  EXPECT_NE(msg.find("declarations.K"), std::string::npos) << msg;
  EXPECT_NE(msg.find("d o d != 0 at degree 0"), std::string::npos) << msg;
}

TEST(Parse, SyntaxErrorsCarryLineAndColumn) {
  const std::string msg = error_of("{\n  \"ring\": \"Z\",\n  oops\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Parse, RejectsUnknownNames) {
  const std::string msg = error_of(R"({
    "declarations": {"M": {"type": "module", "generators": 1, "relations": [[8]]}},
    "command": {"verb": "contra", "args": {"module": "N", "s": 2}}
  })");
  EXPECT_NE(msg.find("command.args.module"), std::string::npos) << msg;
  EXPECT_NE(msg.find("unknown declaration \"N\""), std::string::npos) << msg;
}

TEST(Parse, RejectsSingularMatrixFamilyEntry) {
  const std::string msg = error_of(R"({
    "declarations": {"S": {"type": "spec", "variant": "matrices", "mats": [[[1, 2], [2, 4]]]}},
    "command": {"verb": "localize", "args": {"spec": "S"}}
  })");
  EXPECT_NE(msg.find("declarations.S"), std::string::npos) << msg;
  EXPECT_NE(msg.find("zero determinant"), std::string::npos) << msg;
}

TEST(Parse, RejectsMalformedCommands) {
  const std::string decl = R"("declarations": {"M": {"type": "module", "generators": 1}},)";
  EXPECT_NE(error_of("{" + decl + R"("command": {"verb": "frobnicate"}})").find("unknown verb"),
            std::string::npos);
  EXPECT_NE(error_of("{" + decl + R"("command": {"verb": "contra", "args": {"module": "M"}}})")
                .find("missing argument \"s\""),
            std::string::npos);
  EXPECT_NE(error_of("{" + decl + R"("command": {"verb": "pd", "args": {"module": "M", "x": 1}}})")
                .find("command.args.x"),
            std::string::npos);
  EXPECT_NE(error_of("{" + decl + R"("command": {"verb": "snf", "args": {"matrix": "M"}}})")
                .find("is a module, expected a matrix"),
            std::string::npos);
  EXPECT_NE(error_of("{" + decl + R"("extra": 1, "command": {"verb": "pd", "args": {"module": "M"}}})")
                .find("unknown top-level field"),
            std::string::npos);
  EXPECT_NE(error_of(R"j({"ring": "GF(6)", "command": {"verb": "verify-all"}})j").find("ring"),
            std::string::npos);
}

TEST(Parse, ElementsFollowTheRing) {
  const InputDocument doc = parse_document(R"({
    "ring": "GF(5)[x]",
    "declarations": {"M": {"type": "module", "generators": 1, "relations": [["x^2 + 1"]]}},
    "command": {"verb": "contra", "args": {"module": "M", "s": "x + 2"}}
  })");
  const FpModule& m = declared<FpModule>(doc, "M");
  EXPECT_EQ(m.invariant_factors().size(), 1u);
  EXPECT_NE(error_of(R"({"ring": "Z", "command": {"verb": "flatness", "args": {"s": "1/2"}}})"), "");
}

// ---------------------------------------------------------------- round trip

RingSpec random_ring(Rng& rng) {
  static const char* rings[] = {"Z", "Q", "GF(7)", "GF(3)[x]", "Q[x]"};
  return RingSpec::parse(rings[std::uniform_int_distribution<int>(0, 4)(rng)]);
}

Matrix nonsingular(const RingSpec& r, Rng& rng) {
  const std::size_t n = std::uniform_int_distribution<int>(1, 2)(rng);
  while (true) {
    Matrix m = random_matrix(r, n, n, rng, 3);
    if (!determinant(m).is_zero()) return m;
  }
}

InputDocument random_document(Rng& rng) {
  std::uniform_int_distribution<int> small(0, 3), pos(1, 3);
  InputDocument doc;
  doc.ring = random_ring(rng);
  const RingSpec& r = doc.ring;
  auto add = [&](const std::string& name, Declaration::Value v) {
    doc.declarations.emplace(name, Declaration{std::move(v)});
  };
  add("A", random_matrix(r, small(rng), small(rng), rng, 5));
  const std::size_t ga = pos(rng), gc = pos(rng);
  const FpModule ma(r, ga, random_matrix(r, small(rng), ga, rng, 4));
  const FpModule mc(r, gc, random_matrix(r, small(rng), gc, rng, 4));
  add("M", ma);
  add("N", mc);
  const ChainComplex k = random_complex(r, rng, -small(rng), pos(rng), 3, 4);
  add("K", k);
  add("F", ChainMap::identity(k));
  add("H", ModuleHom::identity(ma));
  const FpModule b = direct_sum(ma, mc);
  add("E", ShortExactSequence{
               ModuleHom(ma, b, vstack(Matrix::identity(r, ga), Matrix(r, gc, ga))),
               ModuleHom(b, mc, hstack(Matrix(r, gc, ga), Matrix::identity(r, gc)))});
  add("S", LocalizationSpec::matrices(r, {nonsingular(r, rng), nonsingular(r, rng)}));
  std::vector<RingElement> gens;
  for (int i = pos(rng); i > 0; --i) gens.push_back(random_element(r, rng, 4));
  add("T", LocalizationSpec::telescope(r, gens));

  const RingElement s = random_element(r, rng, 6);
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0:
      doc.command.verb = "snf";
      doc.command.args["matrix"] = "A";
      break;
    case 1:
      doc.command.verb = "contra";
      doc.command.args["module"] = "M";
      doc.command.args["s"] = io::to_json(s);
      doc.command.expect = Json{{"verdict", true}};
      break;
    case 2:
      doc.command.verb = "ideal-contra";
      doc.command.args["module"] = "N";
      doc.command.args["gens"] = io::to_json(gens);
      break;
    case 3:
      doc.command.verb = "truncate-w";
      doc.command.args["complex"] = "K";
      doc.command.args["n"] = small(rng) - 1;
      break;
    case 4:
      doc.command.verb = "projectives";
      doc.command.args["spec"] = "T";
      doc.command.args["k_max"] = 2;
      doc.command.args["sequences"] = Json::array({"E"});
      break;
    default:
      doc.command.verb = "square";
      doc.command.args["k"] = 1;
      doc.command.args["spec"] = "S";
      doc.command.args["tests"] = Json::array({"M", "N"});
      break;
  }
  return doc;
}

TEST(RoundTrip, ParseOfSerializeIsIdentityOnGeneratedDocuments) {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const InputDocument doc = random_document(rng);
    const std::string text = serialize(doc);
    const InputDocument back = parse_document(text);
    ASSERT_TRUE(back == doc) << text;
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(RoundTrip, StructuralEqualityDetectsChanges) {
  Rng rng(7);
  const InputDocument doc = random_document(rng);
  InputDocument other = doc;
  other.command.verb = doc.command.verb == "snf" ? "pd" : "snf";
  EXPECT_FALSE(other == doc);
  other = doc;
  other.declarations.erase("K");
  EXPECT_FALSE(other == doc);
}

// ---------------------------------------------------------------- reports

TEST(Run, ContraOnZ8) {
  const Report r = run_text(kContraZ8);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.body["result"]["verdict"], true);
  EXPECT_EQ(r.body["result"]["certificate"]["exponent"], 3);
  EXPECT_EQ(r.body["result"]["certificate"]["kind"], "nilpotent");
}

TEST(Run, SnfOnIdentity) {
  const Report r = run_text(kSnfIdentity);
  EXPECT_TRUE(r.passed);
  const Json id = io::to_json(Matrix::identity(RingSpec::integers(), 3));
  for (const char* key : {"U", "D", "V", "U_inv", "V_inv"}) EXPECT_EQ(r.body["result"][key], id) << key;
}

TEST(Run, HeartOnIntegersWithTwo) {
  const Report r = run_text(kHeartZ);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.body["result"]["verdict"], false);
  EXPECT_EQ(r.body["result"]["failing"], 0);
  EXPECT_TRUE(r.body["result"]["witness"].contains("cokernel_representative"));
}

TEST(Run, ReportLayout) {
  const Report r = run_text(kContraZ8);
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.body.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"engine", "conventions", "command", "inputs", "result",
                                            "checks", "passed", "timing"}));
  EXPECT_EQ(r.body["engine"]["version"], kEngineVersion);
  EXPECT_EQ(r.body["inputs"]["module"]["name"], "M");
  EXPECT_TRUE(r.body["conventions"].contains("t_truncation"));
}

TEST(Run, ExpectationsDecideTheOutcome) {
  Json doc = io::parse_text(kContraZ8);
  doc["command"]["expect"] = Json{{"verdict", true}};
  EXPECT_TRUE(run(document_from_json(doc)).passed);
  doc["command"]["expect"] = Json{{"verdict", false}};
  EXPECT_FALSE(run(document_from_json(doc)).passed);
  doc["command"]["expect"] = Json{{"no_such_key", 1}};
  EXPECT_FALSE(run(document_from_json(doc)).passed);
}

TEST(Run, PreconditionFailuresSurface) {
  EXPECT_THROW(run_text(R"({
    "declarations": {"A": {"type": "matrix", "rows": 2, "cols": 1, "entries": [[1], [2]]},
                     "B": {"type": "matrix", "rows": 1, "cols": 1, "entries": [[1]]}},
    "command": {"verb": "solve", "args": {"matrix": "A", "rhs": "B"}}
  })"),
               Error);
}

std::vector<std::string> sample_documents() {
  return {
      kContraZ8,
      kSnfIdentity,
      kHeartZ,
      R"({"declarations": {"S": {"type": "spec", "variant": "telescope", "gens": [2]}},
          "command": {"verb": "projectives", "args": {"spec": "S", "k_max": 2, "count": 6}}})",
      R"({"command": {"verb": "flatness", "args": {"s": 6, "count": 8}}})",
      R"({"command": {"verb": "verify-axioms", "args": {"count": 12}}})",
      R"({"declarations": {"K": {"type": "complex", "support": [-1, 1], "ranks": [2, 2, 1],
                                 "differentials": [[[2, 0], [0, 0]], [[0, 3]]]}},
          "command": {"verb": "truncate-t", "args": {"complex": "K", "n": 0}}})",
      R"({"declarations": {"K": {"type": "complex", "support": [0, 1], "ranks": [2, 2],
                                 "differentials": [[[1, 0], [0, 4]]]}},
          "command": {"verb": "minimize", "args": {"complex": "K"}}})",
      R"({"ring": "Q[x]",
          "declarations": {"M": {"type": "module", "generators": 2,
                                 "relations": [["x^2", "0"], ["0", "x - 1"]]}},
          "command": {"verb": "complete", "args": {"module": "M", "s": "x"}}})",
  };
}

TEST(Run, ReportsAreDeterministic) {
  for (const auto& text : sample_documents()) {
    const Json a = strip_timing(run_text(text).body);
    const Json b = strip_timing(run(parse_document(serialize(parse_document(text)))).body);
    EXPECT_EQ(a.dump(), b.dump()) << text;
    const Json c = strip_timing(run_text(text, {4u, 9u}).body);
    EXPECT_EQ(c.dump(), strip_timing(run_text(text, {4u, 9u}).body).dump()) << text;
  }
}

TEST(Run, EveryVerbReportsPassingChecksOnValidInput) {
  for (const auto& text : sample_documents()) {
    const Report r = run_text(text);
    EXPECT_TRUE(r.passed) << r.body["checks"].dump();
  }
}

// ---------------------------------------------------------------- certificates

std::vector<std::string> certificate_documents() {
  return {
      kContraZ8,
      kSnfIdentity,
      kHeartZ,
      R"({"declarations": {"A": {"type": "matrix", "rows": 2, "cols": 3,
                                 "entries": [[2, 4, 6], [3, 9, 12]]}},
          "command": {"verb": "snf", "args": {"matrix": "A"}}})",
      R"({"declarations": {"A": {"type": "matrix", "rows": 1, "cols": 2, "entries": [[2, 3]]},
                           "B": {"type": "matrix", "rows": 1, "cols": 1, "entries": [[1]]}},
          "command": {"verb": "solve", "args": {"matrix": "A", "rhs": "B"}}})",
      R"({"declarations": {"M": {"type": "module", "generators": 2, "relations": [[12, 0]]}},
          "command": {"verb": "contra", "args": {"module": "M", "s": 2}}})",
      R"({"declarations": {"M": {"type": "module", "generators": 1, "relations": [[12]]}},
          "command": {"verb": "contra", "args": {"module": "M", "s": 2}}})",
      R"({"declarations": {"M": {"type": "module", "generators": 1, "relations": [[12]]}},
          "command": {"verb": "ideal-contra", "args": {"module": "M", "gens": [2, 3]}}})",
      R"({"declarations": {"M": {"type": "module", "generators": 1, "relations": [[8]]},
                           "S": {"type": "spec", "variant": "telescope", "gens": [2, 4]}},
          "command": {"verb": "heart", "args": {"module": "M", "spec": "S"}}})",
      R"({"declarations": {"M": {"type": "module", "generators": 1, "relations": [[9]]},
                           "S": {"type": "spec", "variant": "matrices", "mats": [[[1, 1], [0, 2]]]}},
          "command": {"verb": "heart", "args": {"module": "M", "spec": "S"}}})",
      R"({"declarations": {"M": {"type": "module", "generators": 2, "relations": [[2, 0]]},
                           "S": {"type": "spec", "variant": "matrices", "mats": [[[3]]]}},
          "command": {"verb": "heart", "args": {"module": "M", "spec": "S"}}})",
      R"({"declarations": {"K": {"type": "complex", "support": [0, 1], "ranks": [2, 2],
                                 "differentials": [[[1, 0], [0, 4]]]},
                           "L": {"type": "complex", "support": [0, 1], "ranks": [1, 1],
                                 "differentials": [[[4]]]}},
          "command": {"verb": "heq", "args": {"complex": "K", "other": "L"}}})",
      R"({"declarations": {"K": {"type": "complex", "support": [0, 1], "ranks": [1, 1],
                                 "differentials": [[[2]]]},
                           "L": {"type": "complex", "support": [0, 1], "ranks": [1, 1],
                                 "differentials": [[[4]]]}},
          "command": {"verb": "heq", "args": {"complex": "K", "other": "L"}}})",
      R"({"ring": "GF(3)[x]",
          "declarations": {"K": {"type": "complex", "support": [-1, 1], "ranks": [2, 3, 1],
                                 "differentials": [[["1", "0"], ["0", "x"], ["0", "0"]],
                                                   [["0", "0", "x^2"]]]}},
          "command": {"verb": "minimize", "args": {"complex": "K"}}})",
  };
}

TEST(Certificates, EveryCertificateReVerifies) {
  for (const auto& text : certificate_documents()) {
    const Report r = run_text(text);
    ASSERT_TRUE(r.passed) << text;
    const Json reparsed = io::parse_text(r.body.dump(2));
    const Report c = check_certificate(reparsed);
    EXPECT_TRUE(c.passed) << c.body["checks"].dump() << "\n" << text;
    EXPECT_EQ(c.body["command"]["checked_verb"], r.body["command"]["verb"]);
  }
}

TEST(Certificates, TamperedCertificatesFail) {
  Json snf = run_text(certificate_documents()[3]).body;
  snf["result"]["D"]["entries"][0][0] = 3;
  EXPECT_FALSE(check_certificate(snf).passed);

  Json contra = run_text(kContraZ8).body;
  contra["result"]["certificate"]["exponent"] = 2;
  EXPECT_FALSE(check_certificate(contra).passed);

  Json flipped = run_text(kContraZ8).body;
  flipped["result"]["verdict"] = false;
  EXPECT_FALSE(check_certificate(flipped).passed);

  Json heart = run_text(kHeartZ).body;
  heart["result"]["witness"]["cokernel_representative"]["entries"][0][0] = 2;
  EXPECT_FALSE(check_certificate(heart).passed);

  Json solve = run_text(certificate_documents()[4]).body;
  solve["result"]["solution"]["entries"][0][0] = 5;
  EXPECT_FALSE(check_certificate(solve).passed);
}

TEST(Certificates, ReportsWithoutCertificatesAreRejected) {
  const Json r = run_text(sample_documents()[6]).body;
  EXPECT_THROW(check_certificate(r), io::FormatError);
  EXPECT_THROW(check_certificate(Json::object()), io::FormatError);
}

// ---------------------------------------------------------------- tool

namespace fs = std::filesystem;

int tool(const std::string& args) {
  const std::string cmd = std::string(WEIGHTKIT_TOOL) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::path(testing::TempDir()) / ("weightkit_" + name);
  std::ofstream(p) << text;
  return p;
}

TEST(Tool, ExitCodes) {
  Json expect_true = io::parse_text(kContraZ8);
  expect_true["command"]["expect"] = Json{{"verdict", true}};
  Json expect_false = expect_true;
  expect_false["command"]["expect"] = Json{{"verdict", false}};
  const fs::path ok = write_temp("ok.json", expect_true.dump());
  const fs::path bad = write_temp("bad.json", expect_false.dump());
  const fs::path broken = write_temp("broken.json", "{\"ring\": ");
  const fs::path report = fs::path(testing::TempDir()) / "weightkit_report.json";

  EXPECT_EQ(tool("contra --in " + ok.string()), 0);
  EXPECT_EQ(tool("contra --in " + bad.string()), 1);
  EXPECT_EQ(tool("contra --in " + broken.string()), 2);
  EXPECT_EQ(tool("contra --in /nonexistent/doc.json"), 2);
  EXPECT_EQ(tool("snf --in " + ok.string()), 2);
  EXPECT_EQ(tool("frobnicate --in " + ok.string()), 2);
  EXPECT_EQ(tool("contra"), 2);
  EXPECT_EQ(tool("contra --in " + ok.string() + " --level nope"), 2);

  EXPECT_EQ(tool("contra --in " + ok.string() + " --out " + report.string()), 0);
  std::ifstream in(report);
  const Json written = Json::parse(in);
  EXPECT_EQ(written["result"]["certificate"]["exponent"], 3);
  EXPECT_EQ(tool("check-certificate --in " + report.string()), 0);
}

}  // namespace
