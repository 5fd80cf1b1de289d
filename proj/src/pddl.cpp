#include "irp/pddl.hpp"

#include "irp/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace irp {

HighLevelAction pddl_projection(const HighLevelAction &action) {
  HighLevelAction out = action;
  out.low_level.clear();
  for (auto &p : out.params) {
    p.origin.clear();
    p.landmark = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

std::string pddl_atom(const Atom &a) {
  std::string out = "(" + a.predicate;
  for (const auto &arg : a.args)
    out += " " + arg;
  return out + ")";
}

std::string pddl_literal(const Literal &l) {
  return l.positive() ? pddl_atom(l.atom) : "(not " + pddl_atom(l.atom) + ")";
}

void emit_conjunction(std::ostringstream &out, const std::string &indent,
                      const std::vector<std::string> &items) {
  if (items.empty()) {
    out << "(and)\n";
    return;
  }
  out << "(and\n";
  for (const auto &i : items)
    out << indent << "  " << i << "\n";
  out << indent << ")\n";
}

} // namespace

std::string emit_domain(const PddlDomain &domain) {
  std::ostringstream out;
  out << "(define (domain " << domain.name << ")\n";
  out << "  (:requirements :strips :typing :negative-preconditions)\n";

  auto order = domain.types.ordered();
  std::vector<std::string> groups;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto kids = domain.types.children(*it);
    if (kids.empty())
      continue;
    std::string line;
    for (const auto &k : kids)
      line += k.name + " ";
    groups.push_back(line + "- " + it->name);
  }
  if (!groups.empty()) {
    out << "  (:types\n";
    for (const auto &g : groups)
      out << "    " << g << "\n";
    out << "  )\n";
  }

  if (!domain.predicates.empty()) {
    out << "  (:predicates\n";
    for (const auto &[name, schema] : domain.predicates) {
      out << "    (" << name;
      for (size_t i = 0; i < schema.params.size(); ++i)
        out << " ?x" << i + 1 << " - " << schema.params[i].name;
      out << ")\n";
    }
    out << "  )\n";
  }

  for (const auto &a : domain.actions) {
    out << "  (:action " << a.name << "\n";
    out << "    :parameters (";
    for (size_t i = 0; i < a.params.size(); ++i)
      out << (i ? " " : "") << a.params[i].name << " - " << a.params[i].type.name;
    out << ")\n";
    std::vector<std::string> pre;
    for (const auto &l : a.pre)
      pre.push_back(pddl_literal(l));
    out << "    :precondition ";
    emit_conjunction(out, "    ", pre);
    std::vector<std::string> eff;
    for (const auto &e : a.eff_plus)
      eff.push_back(pddl_atom(e));
    for (const auto &e : a.eff_minus)
      eff.push_back("(not " + pddl_atom(e) + ")");
    out << "    :effect ";
    emit_conjunction(out, "    ", eff);
    out << "  )\n";
  }
  out << ")\n";
  return out.str();
}

std::string emit_problem(const PddlProblem &problem) {
  std::ostringstream out;
  out << "(define (problem " << problem.name << ")\n";
  out << "  (:domain " << problem.domain_name << ")\n";
  std::map<TypeTag, std::vector<std::string>> by_type;
  for (const auto &[id, type] : problem.objects)
    by_type[type].push_back(id);
  if (by_type.empty()) {
    out << "  (:objects)\n";
  } else {
    out << "  (:objects\n";
    for (const auto &[type, ids] : by_type) {
      out << "    ";
      for (const auto &id : ids)
        out << id << " ";
      out << "- " << type.name << "\n";
    }
    out << "  )\n";
  }
  if (problem.init.empty()) {
    out << "  (:init)\n";
  } else {
    out << "  (:init\n";
    for (const auto &a : problem.init)
      out << "    " << pddl_atom(a) << "\n";
    out << "  )\n";
  }
  std::vector<std::string> goal;
  for (const auto &l : problem.goal)
    goal.push_back(pddl_literal(l));
  out << "  (:goal ";
  if (goal.empty()) {
    out << "(and))\n";
  } else {
    out << "(and\n";
    for (const auto &g : goal)
      out << "    " << g << "\n";
    out << "  ))\n";
  }
  out << ")\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Reader

namespace {

struct SExpr {
  bool is_list = false;
  std::string text;
  std::vector<SExpr> items;
  size_t line = 1;
  size_t col = 1;

  std::string where() const { return std::to_string(line) + ":" + std::to_string(col); }
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void syntax(const SExpr &at, const std::string &msg) {
  throw Error(ErrorCode::SyntaxError, at.where() + ": " + msg);
}

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_document() {
    skip();
    if (pos_ >= text_.size())
      throw Error(ErrorCode::SyntaxError, "1:1: empty input");
    SExpr e = read();
    skip();
    if (pos_ < text_.size())
      throw Error(ErrorCode::SyntaxError, here() + ": unexpected text after the closing ')'");
    return e;
  }

private:
  std::string here() const { return std::to_string(line_) + ":" + std::to_string(col_); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    SExpr e;
    e.line = line_;
    e.col = col_;
    if (pos_ >= text_.size())
      throw Error(ErrorCode::SyntaxError, here() + ": unexpected end of input");
    const char c = text_[pos_];
    if (c == ')')
      throw Error(ErrorCode::SyntaxError, here() + ": unbalanced ')'");
    if (c == '(') {
      e.is_list = true;
      advance();
      while (true) {
        skip();
        if (pos_ >= text_.size())
          throw Error(ErrorCode::SyntaxError,
                      e.where() + ": '(' is never closed (reached end of input)");
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '(' || ch == ')' || ch == ';' || std::isspace(static_cast<unsigned char>(ch)))
        break;
      e.text.push_back(ch);
      advance();
    }
    return e;
  }

  std::string_view text_;
  size_t pos_ = 0;
  size_t line_ = 1;
  size_t col_ = 1;
};

bool is_keyword(const SExpr &e, const std::string &kw) {
  return !e.is_list && lower(e.text) == kw;
}

const std::string &symbol(const SExpr &e, const std::string &what) {
  if (e.is_list || e.text.empty())
    syntax(e, "expected " + what);
  return e.text;
}

// "(name ...)" head keyword of a list, lowercased, or empty.
std::string head(const SExpr &e) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list)
    return {};
  return lower(e.items[0].text);
}

struct TypedName {
  std::string name;
  std::string type; // empty when untyped
  const SExpr *at;
};

std::vector<TypedName> typed_list(const std::vector<SExpr> &items, size_t from) {
  std::vector<TypedName> out;
  std::vector<TypedName> pending;
  for (size_t i = from; i < items.size(); ++i) {
    const SExpr &it = items[i];
    if (is_keyword(it, "-")) {
      if (i + 1 >= items.size())
        syntax(it, "'-' must be followed by a type");
      if (pending.empty())
        syntax(it, "'-' without preceding names");
      const std::string &type = symbol(items[i + 1], "type name");
      for (auto &p : pending) {
        p.type = type;
        out.push_back(p);
      }
      pending.clear();
      ++i;
      continue;
    }
    pending.push_back({symbol(it, "name"), {}, &it});
  }
  out.insert(out.end(), pending.begin(), pending.end());
  return out;
}

TypeHierarchy read_types(const SExpr &section) {
  TypeHierarchy h(types::element);
  std::vector<TypedName> decls = typed_list(section.items, 1);
  std::map<std::string, std::string> parent_of;
  for (auto &d : decls) {
    if (d.type.empty())
      d.type = types::element.name;
    if (d.name == types::element.name)
      syntax(*d.at, "'element' is the root type and cannot have a parent");
    auto [it, fresh] = parent_of.emplace(d.name, d.type);
    if (!fresh && it->second != d.type)
      syntax(*d.at, "type '" + d.name + "' declared with two parents");
  }
  std::vector<bool> done(decls.size(), false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < decls.size(); ++i) {
      if (done[i])
        continue;
      const auto &d = decls[i];
      if (h.contains(TypeTag{d.name})) {
        done[i] = true;
        continue;
      }
      if (h.contains(TypeTag{d.type})) {
        h.add(TypeTag{d.name}, TypeTag{d.type});
        done[i] = true;
        progress = true;
      }
    }
  }
  for (size_t i = 0; i < decls.size(); ++i)
    if (!done[i])
      throw Error(ErrorCode::UnknownType, decls[i].at->where() + ": parent type '" +
                                              decls[i].type + "' of '" + decls[i].name +
                                              "' is not declared");
  return h;
}

TypeTag declared_type(const TypeHierarchy &h, const TypedName &n) {
  TypeTag t{n.type.empty() ? h.root().name : n.type};
  if (!h.contains(t))
    throw Error(ErrorCode::UnknownType,
                n.at->where() + ": type '" + t.name + "' is not declared");
  return t;
}

Atom read_atom(const SExpr &e) {
  if (!e.is_list || e.items.empty())
    syntax(e, "expected an atom '(predicate args...)'");
  Atom a;
  a.predicate = symbol(e.items[0], "predicate name");
  if (lower(a.predicate) == "and" || lower(a.predicate) == "not")
    syntax(e, "unexpected '" + a.predicate + "' where an atom was expected");
  for (size_t i = 1; i < e.items.size(); ++i)
    a.args.push_back(symbol(e.items[i], "argument"));
  return a;
}

Literal read_literal(const SExpr &e) {
  if (head(e) == "not") {
    if (e.items.size() != 2)
      syntax(e, "'not' takes exactly one atom");
    return Literal::neg(read_atom(e.items[1]));
  }
  return Literal::pos(read_atom(e));
}

// A conjunction, a single literal, or "()" for the empty condition.
std::vector<std::pair<Literal, const SExpr *>> read_conjunction(const SExpr &e) {
  std::vector<std::pair<Literal, const SExpr *>> out;
  if (e.is_list && e.items.empty())
    return out;
  if (head(e) != "and") {
    out.emplace_back(read_literal(e), &e);
    return out;
  }
  for (size_t i = 1; i < e.items.size(); ++i) {
    const SExpr &it = e.items[i];
    if (is_keyword(it, "not")) {
      if (i + 1 >= e.items.size() || !e.items[i + 1].is_list)
        syntax(it, "'not' must be followed by an atom");
      out.emplace_back(Literal::neg(read_atom(e.items[i + 1])), &it);
      ++i;
      continue;
    }
    if (head(it) == "and")
      syntax(it, "nested 'and' is not supported");
    out.emplace_back(read_literal(it), &it);
  }
  return out;
}

void located(const SExpr &at, const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &err) {
    if (err.code() == ErrorCode::SyntaxError)
      throw;
    throw Error(err.code(), at.where() + ": " + err.detail());
  }
}

const std::set<std::string> kSupportedRequirements = {":strips", ":typing",
                                                      ":negative-preconditions"};

HighLevelAction read_action(const SExpr &e, const Vocabulary &vocab) {
  HighLevelAction a;
  if (e.items.size() < 2)
    syntax(e, "action needs a name");
  a.name = symbol(e.items[1], "action name");
  for (size_t i = 2; i < e.items.size(); ++i) {
    const SExpr &key = e.items[i];
    const std::string kw = key.is_list ? std::string() : lower(key.text);
    if (i + 1 >= e.items.size())
      syntax(key, "missing value after '" + key.text + "'");
    const SExpr &val = e.items[++i];
    if (kw == ":parameters") {
      if (!val.is_list)
        syntax(val, "expected a parameter list");
      for (const auto &n : typed_list(val.items, 0)) {
        if (!is_variable(n.name))
          syntax(*n.at, "parameter '" + n.name + "' must start with '?'");
        a.params.push_back({n.name, declared_type(vocab.types, n), {}, false});
      }
    } else if (kw == ":precondition") {
      for (auto &[l, at] : read_conjunction(val))
        a.pre.insert(l);
    } else if (kw == ":effect") {
      for (auto &[l, at] : read_conjunction(val)) {
        if (l.positive())
          a.eff_plus.insert(l.atom);
        else
          a.eff_minus.insert(l.atom);
      }
    } else {
      syntax(key, "unsupported action field '" + key.text + "'");
    }
  }
  located(e, [&] { validate_action(vocab, a, false); });
  return a;
}

} // namespace

PddlDomain parse_domain(std::string_view text) {
  const SExpr doc = Reader(text).read_document();
  if (head(doc) != "define")
    syntax(doc, "expected '(define ...)'");
  if (doc.items.size() < 2 || head(doc.items[1]) != "domain" || doc.items[1].items.size() != 2)
    syntax(doc, "expected '(domain <name>)'");
  PddlDomain d;
  d.name = symbol(doc.items[1].items[1], "domain name");
  d.types = TypeHierarchy(types::element);

  std::vector<const SExpr *> actions;
  for (size_t i = 2; i < doc.items.size(); ++i) {
    const SExpr &s = doc.items[i];
    const std::string h = head(s);
    if (h == ":requirements") {
      for (size_t k = 1; k < s.items.size(); ++k) {
        const std::string req = lower(symbol(s.items[k], "requirement"));
        if (!kSupportedRequirements.count(req))
          throw Error(ErrorCode::UnknownRequirement,
                      s.items[k].where() + ": requirement '" + req + "' is not supported");
      }
    } else if (h == ":types") {
      d.types = read_types(s);
    } else if (h == ":predicates") {
      for (size_t k = 1; k < s.items.size(); ++k) {
        const SExpr &p = s.items[k];
        if (!p.is_list || p.items.empty())
          syntax(p, "expected a predicate declaration");
        PredicateSchema schema{symbol(p.items[0], "predicate name"), {}};
        for (const auto &n : typed_list(p.items, 1))
          schema.params.push_back(declared_type(d.types, n));
        if (d.predicates.count(schema.name))
          throw Error(ErrorCode::DuplicateName,
                      p.where() + ": predicate '" + schema.name + "' declared twice");
        d.predicates.emplace(schema.name, schema);
      }
    } else if (h == ":action") {
      actions.push_back(&s);
    } else {
      syntax(s, "unsupported domain section '" + (h.empty() ? std::string("?") : h) + "'");
    }
  }
  const Vocabulary vocab = d.vocabulary();
  std::set<std::string> names;
  for (const auto *s : actions) {
    HighLevelAction a = read_action(*s, vocab);
    if (!names.insert(a.name).second)
      throw Error(ErrorCode::DuplicateName, s->where() + ": action '" + a.name + "' declared twice");
    d.actions.push_back(std::move(a));
  }
  return d;
}

PddlProblem parse_problem(std::string_view text, const PddlDomain &domain) {
  const SExpr doc = Reader(text).read_document();
  if (head(doc) != "define")
    syntax(doc, "expected '(define ...)'");
  if (doc.items.size() < 2 || head(doc.items[1]) != "problem" || doc.items[1].items.size() != 2)
    syntax(doc, "expected '(problem <name>)'");
  PddlProblem p;
  p.name = symbol(doc.items[1].items[1], "problem name");
  const Vocabulary vocab = domain.vocabulary();
  const SExpr *init = nullptr;
  const SExpr *goal = nullptr;
  for (size_t i = 2; i < doc.items.size(); ++i) {
    const SExpr &s = doc.items[i];
    const std::string h = head(s);
    if (h == ":domain") {
      if (s.items.size() != 2)
        syntax(s, "expected '(:domain <name>)'");
      p.domain_name = symbol(s.items[1], "domain name");
    } else if (h == ":objects") {
      for (const auto &n : typed_list(s.items, 1)) {
        if (!p.objects.emplace(n.name, declared_type(vocab.types, n)).second)
          throw Error(ErrorCode::DuplicateName,
                      n.at->where() + ": object '" + n.name + "' declared twice");
      }
    } else if (h == ":init") {
      init = &s;
    } else if (h == ":goal") {
      goal = &s;
    } else {
      syntax(s, "unsupported problem section '" + (h.empty() ? std::string("?") : h) + "'");
    }
  }
  auto check = [&](const Atom &a, const SExpr &at) {
    for (const auto &arg : a.args)
      if (!p.objects.count(arg))
        throw Error(ErrorCode::UndeclaredObject,
                    at.where() + ": '" + arg + "' in " + a.str() + " is not declared");
    located(at, [&] { vocab.check_ground(a, p.objects); });
  };
  if (init) {
    std::vector<const SExpr *> facts;
    for (size_t k = 1; k < init->items.size(); ++k) {
      const SExpr &f = init->items[k];
      if (head(f) == "and") {
        for (size_t j = 1; j < f.items.size(); ++j)
          facts.push_back(&f.items[j]);
      } else {
        facts.push_back(&f);
      }
    }
    for (const auto *f : facts) {
      Atom a = read_atom(*f);
      check(a, *f);
      p.init.insert(std::move(a));
    }
  }
  if (goal) {
    if (goal->items.size() > 2)
      syntax(*goal, "':goal' takes one condition");
    if (goal->items.size() == 2) {
      for (auto &[l, at] : read_conjunction(goal->items[1])) {
        check(l.atom, *at);
        p.goal.insert(l);
      }
    }
  }
  return p;
}

} // namespace irp
