#include "shaclcheck/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "shaclcheck/error.hpp"

namespace shaclcheck {

namespace {

// ---------------------------------------------------------------------------
// S-expression reader (shape documents and bare constraints).

struct Sexp {
  bool is_list = false;
  std::string atom;          // valid when !is_list
  std::vector<Sexp> items;   // valid when is_list
  int line = 1, col = 1;     // where the form begins
  int end_line = 1, end_col = 1;
};

class SexpReader {
 public:
  explicit SexpReader(std::string_view text) : text_(text) {}

  std::vector<Sexp> read_all() {
    std::vector<Sexp> forms;
    skip_trivia();
    while (!at_end()) {
      forms.push_back(read_form());
      skip_trivia();
    }
    return forms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (c == ';' || c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  Sexp read_form() {
    Sexp form;
    form.line = line_;
    form.col = col_;
    char c = peek();
    if (c == ')') throw ParseError(line_, col_, "unmatched ')'");
    if (c == '(') {
      form.is_list = true;
      advance();
      skip_trivia();
      while (true) {
        if (at_end()) throw ParseError(form.line, form.col, "unterminated '('");
        if (peek() == ')') {
          advance();
          break;
        }
        form.items.push_back(read_form());
        skip_trivia();
      }
    } else if (c == '"') {
      form.atom = read_quoted();
    } else {
      while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) &&
             peek() != '(' && peek() != ')' && peek() != ';' && peek() != '"') {
        form.atom.push_back(peek());
        advance();
      }
    }
    form.end_line = line_;
    form.end_col = col_;
    return form;
  }

  // A quoted atom keeps its quotes: literals are quoted node ids throughout.
  std::string read_quoted() {
    int l = line_, c = col_;
    std::string out;
    out.push_back('"');
    advance();
    while (!at_end() && peek() != '"' && peek() != '\n') {
      out.push_back(peek());
      advance();
    }
    if (at_end() || peek() != '"') throw ParseError(l, c, "unterminated string");
    out.push_back('"');
    advance();
    return out;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

const std::string& require_atom(const Sexp& form, const char* what) {
  if (form.is_list)
    throw ParseError(form.line, form.col,
                     std::string("expected ") + what + ", found a list");
  return form.atom;
}

uint32_t require_count(const Sexp& form) {
  const std::string& a = require_atom(form, "a count");
  uint32_t n = 0;
  auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), n);
  if (ec != std::errc{} || ptr != a.data() + a.size())
    throw ParseError(form.line, form.col, "expected a count, found '" + a + "'");
  return n;
}

// Wraps constructor-level Errors (e.g. the reserved type property in a path)
// with the source location of the offending form.
template <typename F>
auto located(const Sexp& at, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(at.line, at.col, e.what());
  }
}

PathExpr parse_path(const Sexp& form, SymbolTable& table) {
  if (!form.is_list) {
    return located(form,
                   [&] { return PathExpr::prop(table.property(form.atom)); });
  }
  if (form.items.empty())
    throw ParseError(form.line, form.col, "empty path form");
  const std::string& head = require_atom(form.items[0], "a path operator");
  if (head == "inv") {
    if (form.items.size() != 2)
      throw ParseError(form.line, form.col, "inv takes exactly one path");
    return PathExpr::inverse(parse_path(form.items[1], table));
  }
  if (head == "seq") {
    if (form.items.size() < 3)
      throw ParseError(form.line, form.col, "seq takes at least two paths");
    // Right-spine: (seq a b c) = seq(a, seq(b, c)).
    PathExpr acc = parse_path(form.items.back(), table);
    for (size_t i = form.items.size() - 2; i >= 1; --i)
      acc = PathExpr::seq(parse_path(form.items[i], table), acc);
    return acc;
  }
  throw ParseError(form.items[0].line, form.items[0].col,
                   "unknown path operator '" + head + "'");
}

struct RefSite {
  int line, col;
};

Constraint parse_expr(const Sexp& form, SymbolTable& table,
                      std::map<ShapeId, RefSite>* ref_sites) {
  if (!form.is_list) {
    if (form.atom == "top") return Constraint::top();
    throw ParseError(form.line, form.col,
                     "unknown constraint '" + form.atom + "'");
  }
  if (form.items.empty())
    throw ParseError(form.line, form.col, "empty constraint form");
  const std::string& head = require_atom(form.items[0], "an operator");
  size_t argc = form.items.size() - 1;
  auto arity = [&](size_t want) {
    if (argc != want) {
      std::ostringstream os;
      os << "'" << head << "' takes " << want << " argument"
         << (want == 1 ? "" : "s") << ", found " << argc;
      throw ParseError(form.line, form.col, os.str());
    }
  };
  auto sub = [&](size_t i) { return parse_expr(form.items[i], table, ref_sites); };

  if (head == "node") {
    arity(1);
    return Constraint::node_const(
        table.node(require_atom(form.items[1], "a node name")));
  }
  if (head == "ref") {
    arity(1);
    std::string name = require_atom(form.items[1], "a shape name");
    // Standalone constraints (no document to define shapes) may only
    // reference shapes the table already knows.
    if (!ref_sites) {
      auto found = table.find_shape(name);
      if (!found)
        throw ParseError(form.items[1].line, form.items[1].col,
                         "unresolved shape reference '" + name + "'");
      return Constraint::shape_ref(*found);
    }
    ShapeId s = table.shape(name);
    if (!ref_sites->count(s))
      (*ref_sites)[s] = RefSite{form.items[1].line, form.items[1].col};
    return Constraint::shape_ref(s);
  }
  if (head == "and" || head == "or") {
    if (argc < 2)
      throw ParseError(form.line, form.col,
                       "'" + head + "' takes at least two arguments");
    // Left-spine: (and a b c) = conj(conj(a, b), c).
    Constraint acc = sub(1);
    for (size_t i = 2; i < form.items.size(); ++i)
      acc = head == "and" ? Constraint::conj(acc, sub(i))
                          : Constraint::disj(acc, sub(i));
    return acc;
  }
  if (head == "not") {
    arity(1);
    return Constraint::neg(sub(1));
  }
  if (head == ">=" || head == "<=" || head == "=") {
    arity(3);
    uint32_t n = require_count(form.items[1]);
    PathExpr path = parse_path(form.items[2], table);
    Constraint body = sub(3);
    return located(form, [&] {
      if (head == ">=") return Constraint::at_least(n, path, body);
      if (head == "<=") return Constraint::at_most(n, path, body);
      return Constraint::exactly(n, path, body);
    });
  }
  if (head == "exists" || head == "forall") {
    arity(2);
    PathExpr path = parse_path(form.items[1], table);
    Constraint body = sub(2);
    return head == "exists" ? Constraint::exists(path, body)
                            : Constraint::forall(path, body);
  }
  throw ParseError(form.items[0].line, form.items[0].col,
                   "unknown operator '" + head + "'");
}

TargetQuery parse_target(const Sexp& form, SymbolTable& table) {
  if (!form.is_list) {
    if (form.atom == "none") return TargetQuery::none();
    throw ParseError(form.line, form.col,
                     "unknown target '" + form.atom + "'");
  }
  if (form.items.empty())
    throw ParseError(form.line, form.col, "empty target form");
  const std::string& head = require_atom(form.items[0], "a target kind");
  if (head == "nodes") {
    if (form.items.size() < 2)
      throw ParseError(form.line, form.col, "nodes takes at least one node");
    std::vector<NodeId> vs;
    for (size_t i = 1; i < form.items.size(); ++i)
      vs.push_back(table.node(require_atom(form.items[i], "a node name")));
    return TargetQuery::nodes(std::move(vs));
  }
  if (head == "class" || head == "subjects-of" || head == "objects-of") {
    if (form.items.size() != 2)
      throw ParseError(form.line, form.col,
                       "'" + head + "' takes exactly one name");
    const Sexp& arg = form.items[1];
    const std::string& name = require_atom(arg, "a name");
    if (head == "class") return TargetQuery::cls(table.node(name), table);
    return located(arg, [&] {
      PropertyId p = table.property(name);
      return head == "subjects-of" ? TargetQuery::subjects_of(p)
                                   : TargetQuery::objects_of(p);
    });
  }
  throw ParseError(form.items[0].line, form.items[0].col,
                   "unknown target kind '" + head + "'");
}

// ---------------------------------------------------------------------------
// Native knowledge-base reader.

// Token kinds of the native KB syntax. Multi-byte UTF-8 operators are matched
// as whole tokens; names are runs of bytes outside the delimiter set.
enum class KbTok {
  name, number, subsumed, equivalent, conj, disj, neg, at_least, at_most,
  exists, forall, top, bottom, inverse, compose, dot, comma, colon,
  lparen, rparen, lbrace, rbrace, end
};

struct KbToken {
  KbTok kind;
  std::string text;
  int line, col;
};

class KbLexer {
 public:
  KbLexer(std::string_view text, int line) : text_(text), line_(line) {}

  std::vector<KbToken> run() {
    std::vector<KbToken> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    out.push_back({KbTok::end, "", line_, col()});
    return out;
  }

 private:
  int col() const { return static_cast<int>(pos_) + 1; }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool match(std::string_view op) {
    if (text_.substr(pos_, op.size()) != op) return false;
    pos_ += op.size();
    return true;
  }

  KbToken next() {
    int c = col();
    static const std::pair<std::string_view, KbTok> ops[] = {
        {"⊑", KbTok::subsumed},   {"≡", KbTok::equivalent},
        {"⊓", KbTok::conj},       {"⊔", KbTok::disj},
        {"¬", KbTok::neg},        {"≥", KbTok::at_least},
        {"≤", KbTok::at_most},    {"∃", KbTok::exists},
        {"∀", KbTok::forall},     {"⊤", KbTok::top},
        {"⊥", KbTok::bottom},     {"⁻", KbTok::inverse},
        {"∘", KbTok::compose},
    };
    for (const auto& [op, kind] : ops)
      if (match(op)) return {kind, std::string(op), line_, c};
    char ch = text_[pos_];
    switch (ch) {
      case '.': ++pos_; return {KbTok::dot, ".", line_, c};
      case ',': ++pos_; return {KbTok::comma, ",", line_, c};
      case ':': ++pos_; return {KbTok::colon, ":", line_, c};
      case '(': ++pos_; return {KbTok::lparen, "(", line_, c};
      case ')': ++pos_; return {KbTok::rparen, ")", line_, c};
      case '{': ++pos_; return {KbTok::lbrace, "{", line_, c};
      case '}': ++pos_; return {KbTok::rbrace, "}", line_, c};
      default: break;
    }
    if (ch == '"') {
      std::string s = "\"";
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') s.push_back(text_[pos_++]);
      if (pos_ >= text_.size()) throw ParseError(line_, c, "unterminated string");
      ++pos_;
      s.push_back('"');
      return {KbTok::name, s, line_, c};
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string s;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        s.push_back(text_[pos_++]);
      return {KbTok::number, s, line_, c};
    }
    std::string s;
    while (pos_ < text_.size() && !is_delim()) s.push_back(text_[pos_++]);
    if (s.empty())
      throw ParseError(line_, c, "unexpected character in axiom");
    return {KbTok::name, s, line_, c};
  }

  bool is_delim() {
    char ch = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(ch))) return true;
    switch (ch) {
      case '.': case ',': case ':': case '(': case ')':
      case '{': case '}': case '"':
        return true;
      default: break;
    }
    unsigned char u = static_cast<unsigned char>(ch);
    // Multi-byte operators all start with 0xC2 or 0xE2.
    if (u == 0xc2 || u == 0xe2) {
      static const std::string_view mb[] = {
          "⊑", "≡", "⊓", "⊔", "¬", "≥",
          "≤", "∃", "∀", "⊤", "⊥", "⁻",
          "∘"};
      for (std::string_view op : mb)
        if (text_.substr(pos_, op.size()) == op) return true;
    }
    return false;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_;
};

// Recursive-descent concept/role parser over one axiom line.
//   concept := conj-chain (' ' disj ' ' conj-chain)*      (disj lowest)
//   conj    := unary (' ' conj-op ' ' unary)*
//   unary   := neg unary | quantifier | primary
//   primary := top | bottom | name | {a,b} | (concept)
//   role    := roleAtom (compose roleAtom)*               (right spine)
//   roleAtom:= name [inverse] | (role) [inverse]
class KbConceptParser {
 public:
  KbConceptParser(std::vector<KbToken> toks, DlSignature& sig)
      : toks_(std::move(toks)), sig_(sig) {}

  Concept parse_concept_line() {
    Concept c = parse_disj();
    expect(KbTok::end, "end of axiom");
    return c;
  }

  Concept parse_disj() {
    Concept acc = parse_conj();
    while (at(KbTok::disj)) {
      ++pos_;
      acc = Concept::disj(std::move(acc), parse_conj());
    }
    return acc;
  }

  const KbToken& cur() const { return toks_[pos_]; }
  bool at(KbTok k) const { return cur().kind == k; }

  void expect(KbTok k, const char* what) {
    if (!at(k))
      throw ParseError(cur().line, cur().col,
                       std::string("expected ") + what + ", found '" +
                           (cur().kind == KbTok::end ? "end of line" : cur().text) +
                           "'");
    ++pos_;
  }

  std::string expect_name() {
    if (!at(KbTok::name))
      throw ParseError(cur().line, cur().col, "expected a name");
    return toks_[pos_++].text;
  }

  uint32_t expect_number() {
    if (!at(KbTok::number))
      throw ParseError(cur().line, cur().col, "expected a number");
    uint32_t n = 0;
    const std::string& s = cur().text;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw ParseError(cur().line, cur().col, "number out of range");
    ++pos_;
    return n;
  }

  Role parse_role() {
    Role first = parse_role_atom();
    if (!at(KbTok::compose)) return first;
    ++pos_;
    return Role::compose(std::move(first), parse_role());
  }

 private:
  Concept parse_conj() {
    Concept acc = parse_unary();
    while (at(KbTok::conj)) {
      ++pos_;
      acc = Concept::conj(std::move(acc), parse_unary());
    }
    return acc;
  }

  Concept parse_unary() {
    const KbToken& t = cur();
    switch (t.kind) {
      case KbTok::neg:
        ++pos_;
        return Concept::neg(parse_unary());
      case KbTok::at_least:
      case KbTok::at_most: {
        bool least = t.kind == KbTok::at_least;
        ++pos_;
        uint32_t n = expect_number();
        Role r = parse_role();
        expect(KbTok::dot, "'.'");
        Concept filler = parse_unary();
        if (least) {
          if (n == 0)
            throw ParseError(t.line, t.col, "at-least count must be positive");
          return Concept::at_least(n, std::move(r), std::move(filler));
        }
        return Concept::at_most(n, std::move(r), std::move(filler));
      }
      case KbTok::exists:
      case KbTok::forall: {
        bool ex = t.kind == KbTok::exists;
        ++pos_;
        Role r = parse_role();
        expect(KbTok::dot, "'.'");
        Concept filler = parse_unary();
        return ex ? Concept::exists(std::move(r), std::move(filler))
                  : Concept::forall(std::move(r), std::move(filler));
      }
      default:
        return parse_primary();
    }
  }

  Concept parse_primary() {
    const KbToken& t = cur();
    switch (t.kind) {
      case KbTok::top:
        ++pos_;
        return Concept::top();
      case KbTok::bottom:
        ++pos_;
        return Concept::bottom();
      case KbTok::lparen: {
        ++pos_;
        Concept c = parse_disj();
        expect(KbTok::rparen, "')'");
        return c;
      }
      case KbTok::lbrace: {
        ++pos_;
        std::vector<ObjectId> objects;
        objects.push_back(intern_object(expect_name(), t));
        while (at(KbTok::comma)) {
          ++pos_;
          objects.push_back(intern_object(expect_name(), t));
        }
        expect(KbTok::rbrace, "'}'");
        return Concept::nominal(std::move(objects));
      }
      case KbTok::name: {
        std::string n = toks_[pos_++].text;
        auto id = sig_.find_concept(n);
        if (!id)
          throw ParseError(t.line, t.col,
                           "concept '" + n + "' not declared in the signature");
        return Concept::atomic(*id);
      }
      default:
        throw ParseError(t.line, t.col,
                         "expected a concept, found '" + t.text + "'");
    }
  }

  ObjectId intern_object(const std::string& n, const KbToken& at_tok) {
    auto id = sig_.find_object(n);
    if (!id)
      throw ParseError(at_tok.line, at_tok.col,
                       "object '" + n + "' not declared in the signature");
    return *id;
  }

  Role parse_role_atom() {
    const KbToken& t = cur();
    if (t.kind == KbTok::lparen) {
      ++pos_;
      Role r = parse_role();
      expect(KbTok::rparen, "')'");
      if (at(KbTok::inverse)) {
        ++pos_;
        return Role::inverse(std::move(r));
      }
      return r;
    }
    std::string n = expect_name();
    auto id = sig_.find_role(n);
    if (!id)
      throw ParseError(t.line, t.col,
                       "role '" + n + "' not declared in the signature");
    Role r = Role::atomic(*id);
    if (at(KbTok::inverse)) {
      ++pos_;
      return Role::inverse(std::move(r));
    }
    return r;
  }

  std::vector<KbToken> toks_;
  size_t pos_ = 0;
  DlSignature& sig_;
};

std::vector<std::string> split_names(const std::string& rest, int line) {
  std::vector<std::string> names;
  size_t i = 0;
  while (i < rest.size()) {
    if (std::isspace(static_cast<unsigned char>(rest[i]))) {
      ++i;
      continue;
    }
    std::string name;
    if (rest[i] == '"') {
      size_t close = rest.find('"', i + 1);
      if (close == std::string::npos)
        throw ParseError(line, static_cast<int>(i) + 1, "unterminated string");
      name = rest.substr(i, close - i + 1);
      i = close + 1;
    } else {
      size_t start = i;
      while (i < rest.size() &&
             !std::isspace(static_cast<unsigned char>(rest[i])))
        ++i;
      name = rest.substr(start, i - start);
    }
    names.push_back(std::move(name));
  }
  return names;
}

}  // namespace

ShapeDocument parse_shapes(std::string_view text, SymbolTable& table) {
  std::vector<Sexp> forms = SexpReader(text).read_all();
  std::vector<Shape> shapes;
  std::map<ShapeId, SourceSpan> spans;
  std::map<ShapeId, RefSite> ref_sites;
  // Intern every declared name first so document order fixes the canonical
  // shape order even when a reference runs ahead of its declaration.
  std::set<ShapeId> declared;
  for (const Sexp& form : forms) {
    if (!form.is_list || form.items.empty() || form.items[0].is_list ||
        form.items[0].atom != "shape")
      throw ParseError(form.line, form.col, "expected a (shape ...) form");
    if (form.items.size() != 4)
      throw ParseError(form.line, form.col,
                       "shape takes a name, a target, and a constraint");
    ShapeId name = table.shape(require_atom(form.items[1], "a shape name"));
    if (!declared.insert(name).second)
      throw ParseError(form.items[1].line, form.items[1].col,
                       "duplicate shape name '" + table.shape_name(name) + "'");
  }
  for (const Sexp& form : forms) {
    ShapeId name = table.shape(require_atom(form.items[1], "a shape name"));
    const Sexp& target_form = form.items[2];
    if (!target_form.is_list || target_form.items.size() != 2 ||
        target_form.items[0].is_list || target_form.items[0].atom != "target")
      throw ParseError(target_form.line, target_form.col,
                       "expected (target TARGET)");
    const Sexp& constraint_form = form.items[3];
    if (!constraint_form.is_list || constraint_form.items.size() != 2 ||
        constraint_form.items[0].is_list ||
        constraint_form.items[0].atom != "constraint")
      throw ParseError(constraint_form.line, constraint_form.col,
                       "expected (constraint EXPR)");
    TargetQuery target = parse_target(target_form.items[1], table);
    Constraint constraint =
        parse_expr(constraint_form.items[1], table, &ref_sites);
    shapes.push_back(Shape{name, std::move(constraint), std::move(target)});
    spans[name] = SourceSpan{form.line, form.col, form.end_line, form.end_col};
  }
  for (const auto& [ref, site] : ref_sites) {
    if (!spans.count(ref))
      throw ParseError(site.line, site.col,
                       "unresolved shape reference '" + table.shape_name(ref) +
                           "'");
  }
  ShapeDocument doc{ShapeSet::make(std::move(shapes), table), {}};
  doc.spans.reserve(doc.shapes.size());
  for (const Shape& s : doc.shapes.shapes()) doc.spans.push_back(spans.at(s.name));
  return doc;
}

Constraint parse_constraint(std::string_view text, SymbolTable& table) {
  std::vector<Sexp> forms = SexpReader(text).read_all();
  if (forms.size() != 1)
    throw ParseError(1, 1, "expected exactly one constraint expression");
  return parse_expr(forms[0], table, nullptr);
}

RdfGraph parse_ntriples(std::string_view text, SymbolTable& table) {
  std::vector<Triple> triples;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;

    // Tokenize one line: IRIs, literals, bare 'a', and the closing dot.
    struct Term {
      enum Kind { iri, literal, type_alias, dot } kind;
      std::string name;
      int col;
    };
    std::vector<Term> terms;
    size_t i = 0;
    bool comment = false;
    while (i < line.size() && !comment) {
      char c = line[i];
      int col = static_cast<int>(i) + 1;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '#') {
        comment = true;
      } else if (c == '<') {
        size_t close = line.find('>', i + 1);
        if (close == std::string_view::npos)
          throw ParseError(line_no, col, "unterminated '<'");
        terms.push_back(
            {Term::iri, std::string(line.substr(i + 1, close - i - 1)), col});
        if (terms.back().name.empty())
          throw ParseError(line_no, col, "empty node name");
        i = close + 1;
      } else if (c == '"') {
        size_t close = line.find('"', i + 1);
        if (close == std::string_view::npos)
          throw ParseError(line_no, col, "unterminated string");
        terms.push_back(
            {Term::literal, std::string(line.substr(i, close - i + 1)), col});
        i = close + 1;
      } else if (c == '.') {
        terms.push_back({Term::dot, ".", col});
        ++i;
      } else if (c == 'a' &&
                 (i + 1 == line.size() ||
                  std::isspace(static_cast<unsigned char>(line[i + 1])))) {
        terms.push_back({Term::type_alias, "a", col});
        ++i;
      } else {
        throw ParseError(line_no, col, "malformed triple");
      }
    }
    if (!terms.empty()) {
      if (terms.size() != 4 || terms[3].kind != Term::dot)
        throw ParseError(line_no, 1,
                         "expected '<subj> <pred> <obj> .'");
      if (terms[0].kind != Term::iri)
        throw ParseError(line_no, terms[0].col, "subject must be an IRI");
      if (terms[1].kind != Term::iri && terms[1].kind != Term::type_alias)
        throw ParseError(line_no, terms[1].col, "predicate must be an IRI");
      if (terms[2].kind != Term::iri && terms[2].kind != Term::literal)
        throw ParseError(line_no, terms[2].col,
                         "object must be an IRI or a literal");
      NodeId subj = table.node(terms[0].name);
      PropertyId pred = terms[1].kind == Term::type_alias
                            ? SymbolTable::type_property()
                            : table.property(terms[1].name);
      NodeId obj = table.node(terms[2].name);
      triples.push_back(Triple{subj, pred, obj});
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return RdfGraph::make({}, std::move(triples), table);
}

KnowledgeBase parse_kb(std::string_view text) {
  DlSignature sig;
  std::vector<Axiom> axioms;

  std::vector<std::pair<int, std::string>> lines;
  {
    int n = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t eol = text.find('\n', pos);
      std::string line(text.substr(
          pos, eol == std::string_view::npos ? text.size() - pos : eol - pos));
      ++n;
      size_t hash = line.find('#');
      if (hash != std::string::npos && line.find('"') == std::string::npos)
        line.resize(hash);
      while (!line.empty() &&
             std::isspace(static_cast<unsigned char>(line.back())))
        line.pop_back();
      if (!line.empty()) lines.emplace_back(n, std::move(line));
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
    }
  }

  size_t cursor = 0;
  auto section = [&](const char* header) -> std::pair<int, std::string> {
    if (cursor >= lines.size())
      throw ParseError(static_cast<int>(lines.size()) + 1, 1,
                       std::string("expected '") + header + "' section");
    auto& [line_no, line] = lines[cursor];
    std::string prefix = std::string(header) + ":";
    if (line.rfind(prefix, 0) != 0)
      throw ParseError(line_no, 1,
                       std::string("expected '") + header + ":' header");
    ++cursor;
    return {line_no, line.substr(prefix.size())};
  };

  {
    auto [line_no, rest] = section("concepts");
    for (const auto& n : split_names(rest, line_no)) sig.intern_concept(n);
  }
  {
    auto [line_no, rest] = section("roles");
    for (const auto& n : split_names(rest, line_no)) sig.intern_role(n);
  }
  {
    auto [line_no, rest] = section("objects");
    for (const auto& n : split_names(rest, line_no)) sig.intern_object(n);
  }
  section("axioms");

  for (; cursor < lines.size(); ++cursor) {
    auto& [line_no, line] = lines[cursor];
    std::vector<KbToken> toks = KbLexer(line, line_no).run();
    // Assertions carry a top-level ':' token; inclusions never do.
    bool is_assertion = false;
    for (const KbToken& t : toks)
      if (t.kind == KbTok::colon) is_assertion = true;

    KbConceptParser p(toks, sig);
    if (is_assertion) {
      if (p.at(KbTok::lparen)) {
        p.expect(KbTok::lparen, "'('");
        std::string a = p.expect_name();
        p.expect(KbTok::comma, "','");
        std::string b = p.expect_name();
        p.expect(KbTok::rparen, "')'");
        p.expect(KbTok::colon, "':'");
        Role r = p.parse_role();
        p.expect(KbTok::end, "end of axiom");
        auto ai = sig.find_object(a), bi = sig.find_object(b);
        if (!ai || !bi)
          throw ParseError(line_no, 1, "object not declared in the signature");
        axioms.push_back(Axiom::role_assertion(*ai, *bi, std::move(r)));
      } else {
        std::string a = p.expect_name();
        p.expect(KbTok::colon, "':'");
        Concept c = p.parse_disj();
        p.expect(KbTok::end, "end of axiom");
        auto ai = sig.find_object(a);
        if (!ai)
          throw ParseError(line_no, 1,
                           "object '" + a + "' not declared in the signature");
        axioms.push_back(Axiom::concept_assertion(*ai, std::move(c)));
      }
      continue;
    }
    Concept lhs = p.parse_disj();
    bool equiv = p.at(KbTok::equivalent);
    if (!equiv && !p.at(KbTok::subsumed)) {
      const KbToken& t = p.cur();
      throw ParseError(t.line, t.col, "expected '⊑' or '≡'");
    }
    p.expect(equiv ? KbTok::equivalent : KbTok::subsumed, "axiom connective");
    Concept rhs = p.parse_disj();
    p.expect(KbTok::end, "end of axiom");
    if (equiv) {
      auto [fwd, bwd] = Axiom::equivalence(std::move(lhs), std::move(rhs));
      axioms.push_back(std::move(fwd));
      axioms.push_back(std::move(bwd));
    } else {
      axioms.push_back(Axiom::subsumption(std::move(lhs), std::move(rhs)));
    }
  }
  return KnowledgeBase::make(std::move(sig), std::move(axioms));
}

}  // namespace shaclcheck
