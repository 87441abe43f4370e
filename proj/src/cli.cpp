#include "shaclcheck/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "shaclcheck/containment.hpp"
#include "shaclcheck/error.hpp"
#include "shaclcheck/eval.hpp"
#include "shaclcheck/fragments.hpp"
#include "shaclcheck/parser.hpp"
#include "shaclcheck/serialize.hpp"
#include "shaclcheck/translation.hpp"

namespace shaclcheck {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

uint32_t default_bound() {
  const char* s = std::getenv("SHACLCHECK_BOUND");
  if (!s || !*s) return 4;
  uint32_t n = 0;
  std::string_view sv(s);
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), n);
  if (ec != std::errc{} || ptr != sv.data() + sv.size() || n == 0)
    throw Error("SHACLCHECK_BOUND must be a positive integer, got '" +
                std::string(s) + "'");
  return n;
}

ShapeId resolve_shape(const ShapeSet& set, const SymbolTable& table,
                      const std::string& name) {
  auto id = table.find_shape(name);
  if (!id || !set.contains(*id))
    throw Error("shape '" + name + "' is not defined in the shape set");
  return *id;
}

std::string assignment_block(const RdfGraph& g, const Assignment& sigma,
                             const SymbolTable& table) {
  std::ostringstream out;
  for (NodeId v : g.nodes()) {
    out << "ASSIGN " << ntriples_term(table.node_name(v));
    for (ShapeId s : sigma.shapes_at(v)) out << " " << table.shape_name(s);
    out << "\n";
  }
  return out.str();
}

void emit(std::ostream& out, bool as_json, const json& j,
          const std::string& text) {
  if (as_json)
    out << j.dump(2) << "\n";
  else
    out << text;
}

int run_classify(const std::string& shapes_path, bool as_json,
                 std::ostream& out) {
  SymbolTable table;
  ShapeDocument doc = parse_shapes(read_file(shapes_path), table);
  Fragment f = classify(doc.shapes);
  json j{{"command", "classify"}, {"fragment", to_string(f.kind)}};
  std::ostringstream text;
  text << "fragment: " << to_string(f.kind) << "\n";
  if (f.witness) {
    j["witness"] = {{"shape", table.shape_name(f.witness->shape)},
                    {"path", f.witness->ast_path},
                    {"construct", f.witness->construct}};
    text << "witness: shape " << table.shape_name(f.witness->shape) << " ("
         << f.witness->ast_path << "): " << f.witness->construct << "\n";
  }
  emit(out, as_json, j, text.str());
  return 0;
}

int run_conforms(const std::string& shapes_path, const std::string& data_path,
                 bool validate, bool as_json, std::ostream& out) {
  SymbolTable table;
  ShapeDocument doc = parse_shapes(read_file(shapes_path), table);
  RdfGraph graph = parse_ntriples(read_file(data_path), table);
  const char* command = validate ? "validate" : "conforms";
  if (validate) {
    FaithfulSearch search = find_faithful(graph, doc.shapes, 1);
    if (!search.assignments.empty()) {
      std::string block =
          assignment_block(graph, search.assignments.front(), table);
      emit(out, as_json,
           json{{"command", command},
                {"verdict", "conforms"},
                {"assignment", block}},
           block);
      return 0;
    }
  } else if (conforms(graph, doc.shapes)) {
    emit(out, as_json, json{{"command", command}, {"verdict", "conforms"}},
         "conforms\n");
    return 0;
  }
  std::string reason =
      missing_target_reason(graph, doc.shapes, table)
          .value_or("no faithful assignment exists");
  emit(out, as_json,
       json{{"command", command},
            {"verdict", "does-not-conform"},
            {"reason", reason}},
       "does not conform: " + reason + "\n");
  return 1;
}

int run_translate(const std::string& shapes_path, const std::string& format,
                  bool as_json, std::ostream& out) {
  SymbolTable table;
  ShapeDocument doc = parse_shapes(read_file(shapes_path), table);
  Translation t = tau_shapes(doc.shapes, table);
  KbFormat fmt =
      format == "dl-exchange" ? KbFormat::dl_exchange : KbFormat::native;
  std::string text = serialize_kb(t.kb, fmt);
  emit(out, as_json,
       json{{"command", "translate"}, {"format", format}, {"kb", text}}, text);
  return 0;
}

// Shared verdict reporting for contains / refute / encode-gci.
int report_containment(const char* command, const ContainmentVerdict& v,
                       const SymbolTable& table, bool as_json,
                       std::ostream& out) {
  const char* fragment = to_string(v.fragment);
  json j{{"command", command}, {"fragment", fragment}};
  std::ostringstream text;
  int code = 0;
  switch (v.status) {
    case ContainmentStatus::contained: {
      const char* guarantee =
          v.guarantee == ContainmentGuarantee::complete ? "complete"
                                                        : "sound-only";
      j["verdict"] = "contained";
      j["guarantee"] = guarantee;
      text << "contained (guarantee: " << guarantee
           << ", fragment: " << fragment;
      if (v.bound > 0) {
        j["bound"] = v.bound;
        text << ", bound: " << v.bound;
      }
      text << ")\n";
      code = 0;
      break;
    }
    case ContainmentStatus::not_contained: {
      j["verdict"] = "not-contained";
      j["guarantee"] = "complete";
      const Counterexample& ce = *v.counterexample;
      std::string witness = ntriples_term(table.node_name(ce.witness));
      std::string block =
          write_counterexample(ce.graph, ce.assignment, table);
      j["counterexample"] = {{"witness", witness}, {"block", block}};
      text << "not contained (fragment: " << fragment << ")\n"
           << "counterexample witness " << witness << ":\n"
           << block;
      code = 1;
      break;
    }
    case ContainmentStatus::unknown: {
      j["verdict"] = "unknown";
      j["bound"] = v.bound;
      text << "unknown at bound " << v.bound << " (fragment: " << fragment
           << ")\n";
      code = 2;
      break;
    }
  }
  emit(out, as_json, j, text.str());
  return code;
}

int run_contains(const std::string& shapes_path, const std::string& sub_name,
                 const std::string& super_name, uint32_t bound,
                 bool assume_entailed, bool refute_only, bool as_json,
                 std::ostream& out) {
  SymbolTable table;
  ShapeDocument doc = parse_shapes(read_file(shapes_path), table);
  ShapeId sub = resolve_shape(doc.shapes, table, sub_name);
  ShapeId super = resolve_shape(doc.shapes, table, super_name);
  ContainmentOptions opt;
  opt.refutation_bound = bound;
  opt.assume_entailed = assume_entailed;
  ContainmentVerdict v =
      decide_containment(doc.shapes, sub, super, table, opt);
  return report_containment(refute_only ? "refute" : "contains", v, table,
                            as_json, out);
}

int run_encode_gci(const std::string& shapes_path, const std::string& lhs_text,
                   const std::string& rhs_text, uint32_t bound, bool as_json,
                   std::ostream& out) {
  SymbolTable table;
  ShapeDocument doc = parse_shapes(read_file(shapes_path), table);
  Constraint lhs = parse_constraint(lhs_text, table);
  Constraint rhs = parse_constraint(rhs_text, table);
  GciEncoding enc = encode_gci(lhs, rhs, doc.shapes, table);
  ContainmentOptions opt;
  opt.refutation_bound = bound;
  ContainmentVerdict v =
      decide_containment(enc.shapes, enc.lhs_shape, enc.rhs_shape, table, opt);
  return report_containment("encode-gci", v, table, as_json, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"shape conformance and containment checker"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit JSON instead of text");

  std::string shapes_path, data_path, sub_name, super_name;
  std::string lhs_text, rhs_text;
  std::string format = "native";
  uint32_t bound = 0;
  bool assume_entailed = false;

  auto* classify_cmd =
      app.add_subcommand("classify", "report the fragment of a shape set");
  classify_cmd->add_option("shapes", shapes_path, "shapes file")->required();

  auto* conforms_cmd =
      app.add_subcommand("conforms", "check a data graph against a shape set");
  conforms_cmd->add_option("shapes", shapes_path, "shapes file")->required();
  conforms_cmd->add_option("data", data_path, "data graph file")->required();

  auto* validate_cmd = app.add_subcommand(
      "validate", "check conformance and print one faithful assignment");
  validate_cmd->add_option("shapes", shapes_path, "shapes file")->required();
  validate_cmd->add_option("data", data_path, "data graph file")->required();

  auto* translate_cmd = app.add_subcommand(
      "translate", "translate a shape set to a knowledge base");
  translate_cmd->add_option("shapes", shapes_path, "shapes file")->required();
  translate_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"native", "dl-exchange"}))
      ->capture_default_str();

  auto* contains_cmd =
      app.add_subcommand("contains", "decide containment between two shapes");
  contains_cmd->add_option("shapes", shapes_path, "shapes file")->required();
  contains_cmd->add_option("sub", sub_name, "candidate contained shape")
      ->required();
  contains_cmd->add_option("super", super_name, "candidate containing shape")
      ->required();
  contains_cmd->add_option("--bound", bound, "refutation universe bound");
  contains_cmd->add_flag("--assume-entailed", assume_entailed,
                         "treat an exhausted refutation as containment "
                         "(guarantee drops to sound-only)");

  auto* refute_cmd = app.add_subcommand(
      "refute", "search for a containment counterexample");
  refute_cmd->add_option("shapes", shapes_path, "shapes file")->required();
  refute_cmd->add_option("sub", sub_name, "candidate contained shape")
      ->required();
  refute_cmd->add_option("super", super_name, "candidate containing shape")
      ->required();
  refute_cmd->add_option("--bound", bound, "refutation universe bound");

  auto* gci_cmd = app.add_subcommand(
      "encode-gci", "decide a concept inclusion via fresh shapes");
  gci_cmd->add_option("shapes", shapes_path, "ambient shapes file")->required();
  gci_cmd->add_option("lhs", lhs_text, "left constraint expression")
      ->required();
  gci_cmd->add_option("rhs", rhs_text, "right constraint expression")
      ->required();
  gci_cmd->add_option("--bound", bound, "refutation universe bound");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 3;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 3;
  }

  try {
    if (bound == 0) bound = default_bound();
    if (*classify_cmd) return run_classify(shapes_path, as_json, out);
    if (*conforms_cmd)
      return run_conforms(shapes_path, data_path, false, as_json, out);
    if (*validate_cmd)
      return run_conforms(shapes_path, data_path, true, as_json, out);
    if (*translate_cmd) return run_translate(shapes_path, format, as_json, out);
    if (*contains_cmd)
      return run_contains(shapes_path, sub_name, super_name, bound,
                          assume_entailed, false, as_json, out);
    if (*refute_cmd)
      return run_contains(shapes_path, sub_name, super_name, bound, false,
                          true, as_json, out);
    if (*gci_cmd)
      return run_encode_gci(shapes_path, lhs_text, rhs_text, bound, as_json,
                            out);
    err << "error: no subcommand selected\n";
    return 3;
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.find("budget exhausted") != std::string::npos) {
      err << "unknown: " << msg << "\n";
      return 2;
    }
    err << "error: " << msg << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace shaclcheck
