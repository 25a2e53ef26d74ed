// weightkit <verb> --in <file> [--out <file>] [--level N_max] [--seed S]
//
// Exit codes: 0 ok, 1 a check failed, 2 input error.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weightkit/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw weightkit::Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_report(const weightkit::Report& r, const std::string& out) {
  const std::string text = r.body.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw weightkit::Error("cannot write " + out);
  f << text;
}

std::string verb_list() {
  std::string s;
  for (const auto& [verb, args] : weightkit::verb_table()) s += verb + ", ";
  return s + "check-certificate";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with finitely presented modules and complexes over PIDs"};
  std::string verb, in, out;
  std::optional<unsigned> level;
  std::optional<std::uint64_t> seed;
  app.add_option("verb", verb, "one of: " + verb_list())->required();
  app.add_option("--in", in, "input document (a report for check-certificate)");
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--level", level, "N_max for reduce and square");
  app.add_option("--seed", seed, "seed for sampling verbs and verify-all");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    weightkit::Report report;
    if (verb == "check-certificate") {
      if (in.empty()) throw weightkit::Error("check-certificate needs --in <report>");
      report = weightkit::check_certificate(weightkit::io::parse_text(read_file(in)));
    } else {
      if (!weightkit::verb_table().contains(verb))
        throw weightkit::Error("unknown verb \"" + verb + "\"; expected one of: " + verb_list());
      weightkit::InputDocument doc;
      if (in.empty()) {
        if (verb != "verify-all") throw weightkit::Error(verb + " needs --in <file>");
        doc.ring = weightkit::RingSpec::integers();
        doc.command.verb = verb;
      } else {
        doc = weightkit::parse_document(read_file(in));
      }
      if (doc.command.verb != verb)
        throw weightkit::Error("the document's command is \"" + doc.command.verb +
                               "\", not \"" + verb + "\"");
      report = weightkit::run(doc, {level, seed});
    }
    write_report(report, out);
    return report.passed ? 0 : 1;
  } catch (const weightkit::io::FormatError& e) {
    std::cerr << "weightkit: " << (in.empty() ? "" : in + ": ") << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "weightkit: " << e.what() << "\n";
    return 2;
  }
}
