#include "shaclcheck/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "shaclcheck/dl_norm.hpp"
#include "shaclcheck/error.hpp"
#include "shaclcheck/parser.hpp"

namespace shaclcheck {

namespace {

// ---------------------------------------------------------------------------
// Native knowledge-base writer.

constexpr const char* kSubsumed = "⊑";
constexpr const char* kEquivalent = "≡";
constexpr const char* kConj = " ⊓ ";
constexpr const char* kDisj = " ⊔ ";
constexpr const char* kNeg = "¬";
constexpr const char* kAtLeast = "≥";
constexpr const char* kAtMost = "≤";
constexpr const char* kForall = "∀";
constexpr const char* kTop = "⊤";
constexpr const char* kBottom = "⊥";
constexpr const char* kInverse = "⁻";
constexpr const char* kCompose = "∘";

// A signature name is expressible when the lexer reads it back as exactly
// one name token; this covers identifier-like names and quoted literals and
// rejects anything embedding delimiters or operator glyphs.
bool kb_name_ok(const std::string& name) {
  if (name.empty()) return false;
  if (name.find('\n') != std::string::npos) return false;
  // Quoted literal: quotes only at the ends.
  if (name.front() == '"') {
    return name.size() >= 2 && name.back() == '"' &&
           name.find('"', 1) == name.size() - 1;
  }
  if (std::isdigit(static_cast<unsigned char>(name.front()))) return false;
  static const std::string_view multibyte[] = {
      "⊑", "≡", "⊓", "⊔", "¬", "≥", "≤",
      "∃", "∀", "⊤", "⊥", "⁻", "∘"};
  for (size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    switch (c) {
      case '.': case ',': case ':': case '(': case ')':
      case '{': case '}': case '"':
        return false;
      default: break;
    }
    for (std::string_view op : multibyte)
      if (std::string_view(name).substr(i, op.size()) == op) return false;
  }
  return true;
}

void require_kb_name(const std::string& name) {
  if (!kb_name_ok(name))
    throw Error("name '" + name +
                "' is not expressible in the knowledge-base format");
}

// Grammar slot the expression is printed into: 0 accepts a disjunction
// chain bare, 1 accepts a conjunction chain bare, 2 accepts only a unary
// form.
enum Slot { slot_disj = 0, slot_conj = 1, slot_unary = 2 };

void flatten_conj(const Concept& c, std::vector<Concept>& out) {
  if (c.kind() == Concept::Kind::conj) {
    flatten_conj(c.left(), out);
    out.push_back(c.right());
  } else {
    out.push_back(c);
  }
}

class NativeWriter {
 public:
  explicit NativeWriter(const DlSignature& sig) : sig_(sig) {}

  std::string role(const Role& r, bool as_atom) const {
    switch (r.kind()) {
      case Role::Kind::atomic:
        return sig_.role_name(r.role_name());
      case Role::Kind::inverse: {
        Role inner = r.inner();
        if (inner.kind() == Role::Kind::atomic)
          return sig_.role_name(inner.role_name()) + kInverse;
        return "(" + role(inner, false) + ")" + kInverse;
      }
      case Role::Kind::compose: {
        std::string left = role(r.left(), true);
        std::string text = left + kCompose + role(r.right(), false);
        return as_atom ? "(" + text + ")" : text;
      }
    }
    throw Error("unreachable role kind");
  }

  std::string concept_text(const Concept& c, Slot slot) const {
    switch (c.kind()) {
      case Concept::Kind::top:
        return kTop;
      case Concept::Kind::atomic:
        return sig_.concept_name(c.concept_name());
      case Concept::Kind::nominal: {
        std::string out = "{";
        const auto& objs = c.objects();
        for (size_t i = 0; i < objs.size(); ++i) {
          if (i) out += ",";
          out += sig_.object_name(objs[i]);
        }
        return out + "}";
      }
      case Concept::Kind::conj: {
        std::vector<Concept> parts;
        flatten_conj(c, parts);
        std::string out;
        for (size_t i = 0; i < parts.size(); ++i) {
          if (i) out += kConj;
          out += concept_text(parts[i], slot_unary);
        }
        return slot >= slot_unary ? "(" + out + ")" : out;
      }
      case Concept::Kind::at_least: {
        std::ostringstream os;
        os << kAtLeast << c.count() << " " << role(c.role(), false) << "."
           << concept_text(c.inner(), slot_unary);
        return os.str();
      }
      case Concept::Kind::neg: {
        Concept inner = c.inner();
        if (inner.kind() == Concept::Kind::top) return kBottom;
        if (inner.kind() == Concept::Kind::at_least) {
          std::ostringstream os;
          if (inner.count() == 1) {
            os << kForall << role(inner.role(), false) << "."
               << concept_text(Concept::neg(inner.inner()), slot_unary);
          } else {
            os << kAtMost << inner.count() - 1 << " "
               << role(inner.role(), false) << "."
               << concept_text(inner.inner(), slot_unary);
          }
          return os.str();
        }
        if (inner.kind() == Concept::Kind::conj) {
          std::vector<Concept> parts;
          flatten_conj(inner, parts);
          std::string out;
          for (size_t i = 0; i < parts.size(); ++i) {
            if (i) out += kDisj;
            out += concept_text(Concept::neg(parts[i]), slot_conj);
          }
          return slot >= slot_conj ? "(" + out + ")" : out;
        }
        return kNeg + concept_text(inner, slot_unary);
      }
    }
    throw Error("unreachable concept kind");
  }

 private:
  const DlSignature& sig_;
};

std::string native_kb(const KnowledgeBase& K) {
  const DlSignature& sig = K.signature();
  std::ostringstream out;
  out << "concepts:";
  for (uint32_t i = 0; i < sig.concept_count(); ++i) {
    const std::string& n = sig.concept_name(ConceptId{i});
    require_kb_name(n);
    out << " " << n;
  }
  out << "\nroles:";
  for (uint32_t i = 0; i < sig.role_count(); ++i) {
    const std::string& n = sig.role_name(RoleId{i});
    require_kb_name(n);
    out << " " << n;
  }
  out << "\nobjects:";
  for (uint32_t i = 0; i < sig.object_count(); ++i) {
    const std::string& n = sig.object_name(ObjectId{i});
    require_kb_name(n);
    out << " " << n;
  }
  out << "\naxioms:\n";

  NativeWriter w(sig);
  const auto& axioms = K.axioms();
  for (size_t i = 0; i < axioms.size(); ++i) {
    const Axiom& ax = axioms[i];
    switch (ax.kind()) {
      case Axiom::Kind::subsumption: {
        bool fused = false;
        if (ax.origin() && i + 1 < axioms.size()) {
          const Axiom& next = axioms[i + 1];
          if (next.kind() == Axiom::Kind::subsumption &&
              next.origin() == ax.origin() && next.lhs() == ax.rhs() &&
              next.rhs() == ax.lhs()) {
            out << w.concept_text(ax.lhs(), slot_disj) << " " << kEquivalent
                << " " << w.concept_text(ax.rhs(), slot_disj) << "\n";
            ++i;
            fused = true;
          }
        }
        if (!fused)
          out << w.concept_text(ax.lhs(), slot_disj) << " " << kSubsumed << " "
              << w.concept_text(ax.rhs(), slot_disj) << "\n";
        break;
      }
      case Axiom::Kind::concept_assertion:
        require_kb_name(sig.object_name(ax.object()));
        out << sig.object_name(ax.object()) << " : "
            << w.concept_text(ax.asserted(), slot_disj) << "\n";
        break;
      case Axiom::Kind::role_assertion:
        out << "(" << sig.object_name(ax.subject()) << ", "
            << sig.object_name(ax.object()) << ") : " << w.role(ax.role(), false)
            << "\n";
        break;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// OWL 2 functional-style writer.

bool iri_safe(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name.front())) &&
      name.front() != '_')
    return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      return false;
  return true;
}

std::string ofs_iri(const std::string& name) {
  if (iri_safe(name)) return ":" + name;
  static const char* hex = "0123456789ABCDEF";
  std::string out = "<urn:shaclcheck:";
  for (unsigned char c : name) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xf]);
    }
  }
  return out + ">";
}

class OfsWriter {
 public:
  explicit OfsWriter(const DlSignature& sig) : sig_(sig) {}

  std::string step(const RoleStep& s) const {
    std::string r = ofs_iri(sig_.role_name(s.role));
    return s.inverted ? "ObjectInverseOf(" + r + ")" : r;
  }

  // Compositions are exact only under an at-least-1 restriction, where they
  // expand into nested existentials; everything else refuses them.
  std::string concept_text(const Concept& c) const {
    switch (c.kind()) {
      case Concept::Kind::top:
        return "owl:Thing";
      case Concept::Kind::atomic:
        return ofs_iri(sig_.concept_name(c.concept_name()));
      case Concept::Kind::nominal: {
        std::string out = "ObjectOneOf(";
        const auto& objs = c.objects();
        for (size_t i = 0; i < objs.size(); ++i) {
          if (i) out += " ";
          out += ofs_iri(sig_.object_name(objs[i]));
        }
        return out + ")";
      }
      case Concept::Kind::conj: {
        std::vector<Concept> parts;
        flatten_conj(c, parts);
        std::string out = "ObjectIntersectionOf(";
        for (size_t i = 0; i < parts.size(); ++i) {
          if (i) out += " ";
          out += concept_text(parts[i]);
        }
        return out + ")";
      }
      case Concept::Kind::at_least:
        return restriction(c.count(), c.role(), c.inner());
      case Concept::Kind::neg: {
        Concept inner = c.inner();
        if (inner.kind() == Concept::Kind::top) return "owl:Nothing";
        if (inner.kind() == Concept::Kind::at_least) {
          if (inner.count() == 1) {
            // all-values-from: expand a composed role step by step.
            std::vector<RoleStep> steps = normalize_role(inner.role());
            Concept filler = Concept::neg(inner.inner());
            std::string out = concept_text(filler);
            for (auto it = steps.rbegin(); it != steps.rend(); ++it)
              out = "ObjectAllValuesFrom(" + step(*it) + " " + out + ")";
            return out;
          }
          std::vector<RoleStep> steps = normalize_role(inner.role());
          if (steps.size() != 1)
            throw Error(
                "counting over a composed role is inexpressible without loss "
                "in the exchange format");
          std::ostringstream os;
          os << "ObjectMaxCardinality(" << inner.count() - 1 << " "
             << step(steps[0]);
          if (!(inner.inner() == Concept::top()))
            os << " " << concept_text(inner.inner());
          os << ")";
          return os.str();
        }
        if (inner.kind() == Concept::Kind::conj) {
          std::vector<Concept> parts;
          flatten_conj(inner, parts);
          std::string out = "ObjectUnionOf(";
          for (size_t i = 0; i < parts.size(); ++i) {
            if (i) out += " ";
            out += concept_text(Concept::neg(parts[i]));
          }
          return out + ")";
        }
        return "ObjectComplementOf(" + concept_text(inner) + ")";
      }
    }
    throw Error("unreachable concept kind");
  }

 private:
  std::string restriction(uint32_t n, const Role& r, const Concept& filler) const {
    std::vector<RoleStep> steps = normalize_role(r);
    if (steps.size() > 1) {
      if (n != 1)
        throw Error(
            "counting over a composed role is inexpressible without loss in "
            "the exchange format");
      std::string out = concept_text(filler);
      for (auto it = steps.rbegin(); it != steps.rend(); ++it)
        out = "ObjectSomeValuesFrom(" + step(*it) + " " + out + ")";
      return out;
    }
    if (n == 1)
      return "ObjectSomeValuesFrom(" + step(steps[0]) + " " +
             concept_text(filler) + ")";
    std::ostringstream os;
    os << "ObjectMinCardinality(" << n << " " << step(steps[0]);
    if (!(filler == Concept::top())) os << " " << concept_text(filler);
    os << ")";
    return os.str();
  }

  const DlSignature& sig_;
};

std::string dl_exchange_kb(const KnowledgeBase& K) {
  if (dl_fragment(K) == DlFragment::alcoiq_composition)
    throw Error(
        "knowledge base counts over a composed role; inexpressible without "
        "loss in the exchange format");
  const DlSignature& sig = K.signature();
  std::ostringstream out;
  out << "Prefix(:=<urn:shaclcheck:>)\n";
  out << "Prefix(owl:=<http://www.w3.org/2002/07/owl#>)\n";
  out << "Ontology(<urn:shaclcheck:kb>\n";
  for (uint32_t i = 0; i < sig.concept_count(); ++i)
    out << "Declaration(Class(" << ofs_iri(sig.concept_name(ConceptId{i}))
        << "))\n";
  for (uint32_t i = 0; i < sig.role_count(); ++i)
    out << "Declaration(ObjectProperty(" << ofs_iri(sig.role_name(RoleId{i}))
        << "))\n";
  for (uint32_t i = 0; i < sig.object_count(); ++i)
    out << "Declaration(NamedIndividual(" << ofs_iri(sig.object_name(ObjectId{i}))
        << "))\n";

  OfsWriter w(sig);
  const auto& axioms = K.axioms();
  for (size_t i = 0; i < axioms.size(); ++i) {
    const Axiom& ax = axioms[i];
    switch (ax.kind()) {
      case Axiom::Kind::subsumption: {
        bool fused = false;
        if (ax.origin() && i + 1 < axioms.size()) {
          const Axiom& next = axioms[i + 1];
          if (next.kind() == Axiom::Kind::subsumption &&
              next.origin() == ax.origin() && next.lhs() == ax.rhs() &&
              next.rhs() == ax.lhs()) {
            out << "EquivalentClasses(" << w.concept_text(ax.lhs()) << " "
                << w.concept_text(ax.rhs()) << ")\n";
            ++i;
            fused = true;
          }
        }
        if (!fused)
          out << "SubClassOf(" << w.concept_text(ax.lhs()) << " "
              << w.concept_text(ax.rhs()) << ")\n";
        break;
      }
      case Axiom::Kind::concept_assertion:
        out << "ClassAssertion(" << w.concept_text(ax.asserted()) << " "
            << ofs_iri(sig.object_name(ax.object())) << ")\n";
        break;
      case Axiom::Kind::role_assertion: {
        std::vector<RoleStep> steps = normalize_role(ax.role());
        if (steps.size() != 1)
          throw Error(
              "a composed-role assertion is inexpressible without loss in "
              "the exchange format");
        out << "ObjectPropertyAssertion(" << w.step(steps[0]) << " "
            << ofs_iri(sig.object_name(ax.subject())) << " "
            << ofs_iri(sig.object_name(ax.object())) << ")\n";
        break;
      }
    }
  }
  out << ")\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Shape writer.

bool sexp_name_ok(const std::string& name) {
  if (name.empty()) return false;
  if (name.front() == '"')
    return name.size() >= 2 && name.back() == '"' &&
           name.find('"', 1) == name.size() - 1 &&
           name.find('\n') == std::string::npos;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (c == '(' || c == ')' || c == ';' || c == '"' || c == '#') return false;
  }
  return true;
}

std::string sexp_name(const std::string& name) {
  if (!sexp_name_ok(name))
    throw Error("name '" + name + "' is not expressible in the shape format");
  return name;
}

std::string path_text(const PathExpr& p, const SymbolTable& table) {
  switch (p.kind()) {
    case PathExpr::Kind::prop:
      return sexp_name(table.property_name(p.property()));
    case PathExpr::Kind::inverse:
      return "(inv " + path_text(p.inner(), table) + ")";
    case PathExpr::Kind::seq: {
      std::string out = "(seq " + path_text(p.left(), table);
      PathExpr rest = p.right();
      while (rest.kind() == PathExpr::Kind::seq) {
        out += " " + path_text(rest.left(), table);
        rest = rest.right();
      }
      return out + " " + path_text(rest, table) + ")";
    }
  }
  throw Error("unreachable path kind");
}

void flatten_constraint_conj(const Constraint& c, std::vector<Constraint>& out) {
  if (c.kind() == Constraint::Kind::conj) {
    flatten_constraint_conj(c.left(), out);
    out.push_back(c.right());
  } else {
    out.push_back(c);
  }
}

std::string constraint_text(const Constraint& c, const SymbolTable& table) {
  switch (c.kind()) {
    case Constraint::Kind::top:
      return "top";
    case Constraint::Kind::shape_ref:
      return "(ref " + sexp_name(table.shape_name(c.shape())) + ")";
    case Constraint::Kind::node_const:
      return "(node " + sexp_name(table.node_name(c.node())) + ")";
    case Constraint::Kind::conj: {
      std::vector<Constraint> parts;
      flatten_constraint_conj(c, parts);
      std::string out = "(and";
      for (const Constraint& p : parts) out += " " + constraint_text(p, table);
      return out + ")";
    }
    case Constraint::Kind::at_least: {
      std::ostringstream os;
      os << "(>= " << c.count() << " " << path_text(c.path(), table) << " "
         << constraint_text(c.inner(), table) << ")";
      return os.str();
    }
    case Constraint::Kind::neg: {
      Constraint inner = c.inner();
      if (inner.kind() == Constraint::Kind::at_least) {
        std::ostringstream os;
        if (inner.count() == 1) {
          os << "(forall " << path_text(inner.path(), table) << " "
             << constraint_text(Constraint::neg(inner.inner()), table) << ")";
        } else {
          os << "(<= " << inner.count() - 1 << " "
             << path_text(inner.path(), table) << " "
             << constraint_text(inner.inner(), table) << ")";
        }
        return os.str();
      }
      if (inner.kind() == Constraint::Kind::conj) {
        std::vector<Constraint> parts;
        flatten_constraint_conj(inner, parts);
        std::string out = "(or";
        for (const Constraint& p : parts)
          out += " " + constraint_text(Constraint::neg(p), table);
        return out + ")";
      }
      return "(not " + constraint_text(inner, table) + ")";
    }
  }
  throw Error("unreachable constraint kind");
}

std::string target_text(const TargetQuery& q, const SymbolTable& table) {
  switch (q.kind()) {
    case TargetQuery::Kind::none:
      return "none";
    case TargetQuery::Kind::nodes: {
      std::string out = "(nodes";
      for (NodeId v : q.node_list()) out += " " + sexp_name(table.node_name(v));
      return out + ")";
    }
    case TargetQuery::Kind::cls:
      return "(class " + sexp_name(table.node_name(q.class_node())) + ")";
    case TargetQuery::Kind::subjects_of:
      return "(subjects-of " + sexp_name(table.property_name(q.property())) +
             ")";
    case TargetQuery::Kind::objects_of:
      return "(objects-of " + sexp_name(table.property_name(q.property())) +
             ")";
  }
  throw Error("unreachable target kind");
}

}  // namespace

std::string serialize_kb(const KnowledgeBase& K, KbFormat format) {
  return format == KbFormat::native ? native_kb(K) : dl_exchange_kb(K);
}

std::string serialize_shapes(const ShapeSet& s, const SymbolTable& table) {
  std::ostringstream out;
  for (const Shape& shape : s.shapes()) {
    out << "(shape " << sexp_name(table.shape_name(shape.name)) << " (target "
        << target_text(shape.target, table) << ") (constraint "
        << constraint_text(shape.constraint, table) << "))\n";
  }
  return out.str();
}

std::string ntriples_term(const std::string& name) {
  if (!name.empty() && name.front() == '"') {
    if (name.size() < 2 || name.back() != '"' ||
        name.find('"', 1) != name.size() - 1 ||
        name.find('\n') != std::string::npos)
      throw Error("literal name '" + name + "' is not expressible");
    return name;
  }
  if (name.empty() || name.find('>') != std::string::npos ||
      name.find('\n') != std::string::npos)
    throw Error("node name '" + name + "' is not expressible");
  return "<" + name + ">";
}

std::string serialize_ntriples(const RdfGraph& g, const SymbolTable& table) {
  std::ostringstream out;
  for (const Triple& t : g.triples()) {
    out << ntriples_term(table.node_name(t.subject)) << " ";
    if (t.predicate == SymbolTable::type_property())
      out << "a";
    else
      out << ntriples_term(table.property_name(t.predicate));
    out << " " << ntriples_term(table.node_name(t.object)) << " .\n";
  }
  return out.str();
}

std::string write_counterexample(const RdfGraph& g, const Assignment& sigma,
                                 const SymbolTable& table) {
  std::ostringstream out;
  out << serialize_ntriples(g, table) << "\n";
  for (NodeId v : g.nodes()) {
    out << "ASSIGN " << ntriples_term(table.node_name(v));
    for (ShapeId s : sigma.shapes_at(v)) out << " " << table.shape_name(s);
    out << "\n";
  }
  return out.str();
}

ParsedCounterexample parse_counterexample(std::string_view text,
                                          const ShapeSet& s,
                                          SymbolTable& table) {
  // Split at the first blank line: triples above, ASSIGN lines below.
  std::vector<std::pair<int, std::string>> assign_lines;
  std::string nt_text;
  {
    int line_no = 0;
    bool in_assign = false;
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t eol = text.find('\n', pos);
      std::string line(text.substr(
          pos, eol == std::string_view::npos ? text.size() - pos : eol - pos));
      ++line_no;
      while (!line.empty() &&
             std::isspace(static_cast<unsigned char>(line.back())))
        line.pop_back();
      if (!in_assign) {
        if (line.empty()) {
          if (eol != std::string_view::npos) in_assign = true;
        } else {
          nt_text += line;
          nt_text += "\n";
        }
      } else if (!line.empty()) {
        assign_lines.emplace_back(line_no, line);
      }
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
    }
  }

  RdfGraph triples_only = parse_ntriples(nt_text, table);
  std::vector<NodeId> nodes = triples_only.nodes();
  struct AssignEntry {
    NodeId node;
    std::vector<ShapeId> shapes;
  };
  std::vector<AssignEntry> entries;
  for (const auto& [line_no, line] : assign_lines) {
    size_t i = 0;
    auto skip_ws = [&] {
      while (i < line.size() &&
             std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
    };
    skip_ws();
    if (line.compare(i, 7, "ASSIGN ") != 0)
      throw ParseError(line_no, static_cast<int>(i) + 1,
                       "expected an ASSIGN line");
    i += 7;
    skip_ws();
    if (i >= line.size())
      throw ParseError(line_no, static_cast<int>(i) + 1, "ASSIGN needs a node");
    NodeId v{};
    if (line[i] == '<') {
      size_t close = line.find('>', i + 1);
      if (close == std::string::npos || close == i + 1)
        throw ParseError(line_no, static_cast<int>(i) + 1,
                         "malformed node term");
      v = table.node(line.substr(i + 1, close - i - 1));
      i = close + 1;
    } else if (line[i] == '"') {
      size_t close = line.find('"', i + 1);
      if (close == std::string::npos)
        throw ParseError(line_no, static_cast<int>(i) + 1,
                         "unterminated string");
      v = table.node(line.substr(i, close - i + 1));
      i = close + 1;
    } else {
      throw ParseError(line_no, static_cast<int>(i) + 1,
                       "malformed node term");
    }
    AssignEntry entry{v, {}};
    while (true) {
      skip_ws();
      if (i >= line.size()) break;
      size_t start = i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      std::string shape_name = line.substr(start, i - start);
      auto sid = table.find_shape(shape_name);
      if (!sid || !s.contains(*sid))
        throw ParseError(line_no, static_cast<int>(start) + 1,
                         "unknown shape '" + shape_name + "'");
      entry.shapes.push_back(*sid);
    }
    nodes.push_back(v);
    entries.push_back(std::move(entry));
  }

  RdfGraph graph =
      RdfGraph::make(std::move(nodes), triples_only.triples(), table);
  for (NodeId v : graph.nodes()) {
    bool covered = false;
    for (const AssignEntry& e : entries) covered = covered || e.node == v;
    if (!covered)
      throw ParseError(1, 1, "assignment is not total: node '" +
                                 table.node_name(v) + "' has no ASSIGN line");
  }
  Assignment sigma(graph, s.names());
  for (const AssignEntry& e : entries)
    for (ShapeId sid : e.shapes) sigma.set(e.node, sid, true);
  return ParsedCounterexample{std::move(graph), std::move(sigma)};
}

}  // namespace shaclcheck
