#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "shaclcheck/cli.hpp"
#include "shaclcheck/eval.hpp"
#include "shaclcheck/parser.hpp"
#include "shaclcheck/serialize.hpp"
#include "shaclcheck/translation.hpp"

using namespace shaclcheck;
using nlohmann::json;
using shaclcheck::testing::golden_path;
using shaclcheck::testing::read_test_file;
using shaclcheck::testing::test_data_path;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return CliResult{code, out.str(), err.str()};
}

json parse_json(const CliResult& r) {
  REQUIRE_FALSE(r.out.empty());
  return json::parse(r.out);
}

const std::string kS1 = test_data_path("s1.shapes");
const std::string kFig1b = test_data_path("fig1b.nt");
const std::string kErratum = test_data_path("erratum.shapes");
const std::string kG1 = test_data_path("g1.nt");
const std::string kRestricted = test_data_path("restricted.shapes");
const std::string kEmptyShapes = test_data_path("empty.shapes");

}  // namespace

TEST_CASE("classify reports the fragment with a witness") {
  CliResult r = run({"classify", kS1});
  CHECK(r.code == 0);
  CHECK(r.out.find("fragment: restricted") != std::string::npos);
  CHECK(r.out.find("PainterShape") != std::string::npos);

  json j = parse_json(run({"--json", "classify", kS1}));
  CHECK(j["command"] == "classify");
  CHECK(j["fragment"] == "restricted");
  CHECK(j["witness"]["shape"] == "PainterShape");
  CHECK(j["witness"]["construct"].get<std::string>().find("inverse") !=
        std::string::npos);

  json no_witness = parse_json(run({"--json", "classify", kErratum}));
  CHECK(no_witness["fragment"] == "inverse-free");
  CHECK_FALSE(no_witness.contains("witness"));
}

TEST_CASE("conforms and validate on the painting example") {
  CliResult yes = run({"conforms", kS1, kFig1b});
  CHECK(yes.code == 0);
  CHECK(yes.out == "conforms\n");

  std::string expected_block =
      "ASSIGN <Painting>\n"
      "ASSIGN <cubism>\n"
      "ASSIGN <guernica> PaintingShape\n"
      "ASSIGN <picasso> PainterShape CubistShape\n"
      "ASSIGN <mncars>\n"
      "ASSIGN \"25.10.1881\"\n"
      "ASSIGN <Museum>\n";
  CliResult assigned = run({"validate", kS1, kFig1b});
  CHECK(assigned.code == 0);
  CHECK(assigned.out == expected_block);

  json j = parse_json(run({"validate", kS1, kFig1b, "--json"}));
  CHECK(j["command"] == "validate");
  CHECK(j["verdict"] == "conforms");
  CHECK(j["assignment"] == expected_block);
}

TEST_CASE("a missing target node fails conformance with its reason") {
  CliResult no = run({"conforms", kErratum, kG1});
  CHECK(no.code == 1);
  CHECK(no.out.find("does not conform") != std::string::npos);
  CHECK(no.out.find("alice") != std::string::npos);

  CliResult validate = run({"validate", kErratum, kG1});
  CHECK(validate.code == 1);

  json j = parse_json(run({"--json", "conforms", kErratum, kG1}));
  CHECK(j["verdict"] == "does-not-conform");
  CHECK(j["reason"].get<std::string>().find("alice") != std::string::npos);
}

TEST_CASE("translate matches the golden knowledge bases") {
  std::string native = read_test_file(golden_path("s1_native.kb"));
  CliResult r = run({"translate", kS1});
  CHECK(r.code == 0);
  CHECK(r.out == native);

  CliResult explicit_fmt = run({"translate", kS1, "--format", "native"});
  CHECK(explicit_fmt.out == native);

  std::string exchange = read_test_file(golden_path("s1_dlexchange.ofn"));
  CliResult ofs = run({"translate", kS1, "--format", "dl-exchange"});
  CHECK(ofs.code == 0);
  CHECK(ofs.out == exchange);

  json j = parse_json(run({"--json", "translate", kS1}));
  CHECK(j["kb"] == native);
  CHECK(j["format"] == "native");
}

TEST_CASE("contains refutes with a re-verifiable counterexample") {
  CliResult text = run({"contains", kS1, "CubistShape", "PainterShape",
                        "--bound", "5"});
  CHECK(text.code == 1);
  CHECK(text.out.find("not contained (fragment: restricted)") !=
        std::string::npos);
  CHECK(text.out.find("counterexample witness ") != std::string::npos);

  json j = parse_json(run({"--json", "contains", kS1, "CubistShape",
                           "PainterShape", "--bound", "5"}));
  CHECK(j["verdict"] == "not-contained");
  CHECK(j["guarantee"] == "complete");

  // The embedded block re-verifies end to end against a fresh parse.
  SymbolTable table;
  ShapeDocument doc = parse_shapes(read_test_file(kS1), table);
  ParsedCounterexample ce = parse_counterexample(
      j["counterexample"]["block"].get<std::string>(), doc.shapes, table);
  CHECK(is_faithful(ce.graph, ce.assignment, doc.shapes));

  std::string witness_term = j["counterexample"]["witness"].get<std::string>();
  std::string witness_name =
      witness_term.front() == '<'
          ? witness_term.substr(1, witness_term.size() - 2)
          : witness_term;
  NodeId witness = *table.find_node(witness_name);
  CHECK(ce.assignment.contains(witness, *table.find_shape("CubistShape")));
  CHECK_FALSE(ce.assignment.contains(witness, *table.find_shape("PainterShape")));
}

TEST_CASE("contains answers completely on reflexive and easy pairs") {
  CliResult self = run({"contains", kS1, "PainterShape", "PainterShape"});
  CHECK(self.code == 0);
  CHECK(self.out == "contained (guarantee: complete, fragment: restricted)\n");
}

TEST_CASE("restricted-fragment positives are unknown, assumed, or refuted") {
  CliResult unknown = run({"contains", kRestricted, "AtLeastTwo", "AtLeastOne"});
  CHECK(unknown.code == 2);
  CHECK(unknown.out == "unknown at bound 4 (fragment: restricted)\n");

  CliResult tighter = run({"contains", kRestricted, "AtLeastTwo", "AtLeastOne",
                           "--bound", "2"});
  CHECK(tighter.code == 2);
  CHECK(tighter.out == "unknown at bound 2 (fragment: restricted)\n");

  CliResult assumed = run({"contains", kRestricted, "AtLeastTwo", "AtLeastOne",
                           "--assume-entailed"});
  CHECK(assumed.code == 0);
  CHECK(assumed.out ==
        "contained (guarantee: sound-only, fragment: restricted, bound: 4)\n");

  json j = parse_json(run({"--json", "contains", kRestricted, "AtLeastTwo",
                           "AtLeastOne", "--assume-entailed"}));
  CHECK(j["guarantee"] == "sound-only");
  CHECK(j["bound"] == 4);

  CliResult refuted = run({"refute", kRestricted, "AtLeastOne", "AtLeastTwo"});
  CHECK(refuted.code == 1);
  CHECK(refuted.out.find("not contained") != std::string::npos);

  // refute never assumes entailment, so the open direction stays unknown.
  CliResult open = run({"refute", kRestricted, "AtLeastTwo", "AtLeastOne"});
  CHECK(open.code == 2);
}

TEST_CASE("the environment variable sets the default bound") {
  setenv("SHACLCHECK_BOUND", "3", 1);
  CliResult env = run({"contains", kRestricted, "AtLeastTwo", "AtLeastOne"});
  CHECK(env.code == 2);
  CHECK(env.out == "unknown at bound 3 (fragment: restricted)\n");

  // An explicit flag wins over the environment.
  CliResult flag = run({"contains", kRestricted, "AtLeastTwo", "AtLeastOne",
                        "--bound", "2"});
  CHECK(flag.out == "unknown at bound 2 (fragment: restricted)\n");

  setenv("SHACLCHECK_BOUND", "zero", 1);
  CliResult bad = run({"contains", kRestricted, "AtLeastTwo", "AtLeastOne"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("SHACLCHECK_BOUND") != std::string::npos);
  unsetenv("SHACLCHECK_BOUND");
}

TEST_CASE("constraint inclusions decide over an empty ambient set") {
  CliResult pos = run({"encode-gci", kEmptyShapes, "(>= 2 p top)",
                       "(>= 1 p top)"});
  CHECK(pos.code == 0);
  CHECK(pos.out ==
        "contained (guarantee: complete, fragment: inverse-free)\n");

  CliResult neg = run({"encode-gci", kEmptyShapes, "top", "(node v)"});
  CHECK(neg.code == 1);
  CHECK(neg.out.find("not contained") != std::string::npos);

  json j = parse_json(
      run({"--json", "encode-gci", kEmptyShapes, "top", "(node v)"}));
  CHECK(j["command"] == "encode-gci");
  std::string block = j["counterexample"]["block"].get<std::string>();
  // The refuting graph needs the constant plus one node outside it. The
  // graph has no triples, so the whole block must be parsed (the node set
  // lives in the ASSIGN lines).
  SymbolTable t;
  ShapeSet ambient = ShapeSet::make({}, t);
  GciEncoding enc =
      encode_gci(Constraint::top(), parse_constraint("(node v)", t), ambient, t);
  ParsedCounterexample ce = parse_counterexample(block, enc.shapes, t);
  CHECK(ce.graph.nodes().size() == 2);
}

TEST_CASE("usage and input errors exit 3") {
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"conforms", kS1}).code == 3);
  CHECK(run({"translate", kS1, "--format", "xml"}).code == 3);
  CHECK(run({"classify", "/nonexistent/file.shapes"}).code == 3);
  CHECK(run({"contains", kS1, "NoSuchShape", "PainterShape"}).code == 3);
  CHECK(run({"encode-gci", kEmptyShapes, "(>= 1)", "top"}).code == 3);

  CliResult err = run({"classify", kG1});  // triples are not shape forms
  CHECK(err.code == 3);
  CHECK(err.err.find("error:") != std::string::npos);
  CHECK(err.out.empty());
}

TEST_CASE("help exits cleanly") {
  CliResult top = run({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("classify") != std::string::npos);
  CliResult sub = run({"contains", "--help"});
  CHECK(sub.code == 0);
}
