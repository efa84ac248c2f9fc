#pragma once

// Text format for finite sets, relations and structures.
//
//   object NAME SIZE [labels...]
//   rel NAME : SRC -> DST { (i,j) ... }
//   frob2 NAME { carrier A  unit { i ... }  mult { (a,b)->{c ...} ... } }
//   frob3 NAME { carrier A  lambda { (x,y,z)->{u ...} ... } }
//   connector NAME { carrier A  releq R { (i,j) ... }  releq S { ... }  p { (x,y,z)->w ... } }
//   groupoid NAME { objects k  morphisms n  source ...  target ...  unit ...  inverse ...
//                   compose { (a,b)->c ... }  [tags { t ... }] }
//
// Object expressions are factor names separated by spaces, a trailing '-'
// marking the dual factor, and () for the unit. Elements are labels or
// indices; tensor elements are parenthesized tuples. '#' starts a comment.

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "frobrel/frob3.hpp"

namespace frobrel::frl {

using Value = std::variant<FinSet, FinRel, Frob2, Frob3, Connector, Groupoid>;

struct Entry {
  std::string name;
  Value value;
  std::vector<std::string> tags;  // per-element metadata (groupoids only)
};

inline std::string kind_name(const Value& v) {
  static const char* names[] = {"object", "rel", "frob2", "frob3", "connector", "groupoid"};
  return names[v.index()];
}

class Document {
 public:
  const std::vector<Entry>& entries() const { return entries_; }

  void add(std::string name, Value v, std::vector<std::string> tags = {}) {
    if (find(name)) throw InputError("duplicate declaration '" + name + "'");
    entries_.push_back({std::move(name), std::move(v), std::move(tags)});
  }

  const Entry* find(const std::string& name) const {
    for (const auto& e : entries_)
      if (e.name == name) return &e;
    return nullptr;
  }

  // The named entry, or the sole non-object entry when no name is given.
  const Entry& select(const std::string& name = "") const {
    if (!name.empty()) {
      auto e = find(name);
      if (!e) throw InputError("no declaration named '" + name + "'");
      return *e;
    }
    const Entry* only = nullptr;
    for (const auto& e : entries_) {
      if (std::holds_alternative<FinSet>(e.value)) continue;
      if (only) throw InputError("several structures in file; choose one with --name");
      only = &e;
    }
    if (!only) throw InputError("file declares no structure");
    return *only;
  }

 private:
  std::vector<Entry> entries_;
};

// --------------------------------------------------------------- lexer

namespace detail {

struct Token {
  enum Kind { word, punct, end } kind;
  std::string text;
  std::size_t line, col;
};

inline bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'' || c == '^' || c == '+';
}

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < src.size();) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Token::punct, "->", line, col});
      i += 2;
      col += 2;
      continue;
    }
    if (std::string_view("{}(),:-").find(c) != std::string_view::npos) {
      out.push_back({Token::punct, std::string(1, c), line, col});
      ++i;
      ++col;
      continue;
    }
    if (word_char(c)) {
      std::size_t j = i;
      while (j < src.size() && word_char(src[j])) ++j;
      out.push_back({Token::word, src.substr(i, j - i), line, col});
      col += j - i;
      i = j;
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Token::end, "", line, col});
  return out;
}

// --------------------------------------------------------------- parser

class Loader {
 public:
  explicit Loader(const std::string& src) : toks_(lex(src)) {}

  Document run() {
    while (peek().kind != Token::end) declaration();
    return std::move(doc_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Document doc_;

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw SyntaxError(msg, at.line, at.col); }

  bool at(const std::string& p) const { return peek().kind == Token::punct && peek().text == p; }
  bool at_word(const std::string& w) const { return peek().kind == Token::word && peek().text == w; }

  void expect(const std::string& p) {
    if (!at(p)) fail("expected '" + p + "'" + (peek().kind == Token::end ? " before end of file" : ", found '" + peek().text + "'"), peek());
    next();
  }

  std::string word(const std::string& what) {
    if (peek().kind != Token::word) fail("expected " + what, peek());
    return next().text;
  }

  std::size_t number(const std::string& what) {
    const auto& t = peek();
    auto w = word(what);
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail("expected a number for " + what + ", found '" + w + "'", t);
    return std::stoul(w);
  }

  const FinSet& object(const Token& at) {
    auto e = doc_.find(at.text);
    if (!e) fail("unresolved name '" + at.text + "'", at);
    if (!std::holds_alternative<FinSet>(e->value)) fail("'" + at.text + "' is a " + kind_name(e->value) + ", not an object", at);
    return std::get<FinSet>(e->value);
  }

  std::size_t element(const FinSet& s) {
    const auto& t = peek();
    auto w = word("an element of " + s.name);
    if (!s.labels.empty()) {
      for (std::size_t i = 0; i < s.labels.size(); ++i)
        if (s.labels[i] == w) return i;
    }
    if (!w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      auto i = std::stoul(w);
      if (i < s.size) return i;
    }
    fail("'" + w + "' is not an element of " + s.name, t);
  }

  std::size_t obj_element(const Obj& o) {
    if (o.arity() == 1) return element(o.factors()[0].set);
    expect("(");
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < o.arity(); ++k) {
      if (k) expect(",");
      idx.push_back(element(o.factors()[k].set));
    }
    expect(")");
    return o.arity() == 0 ? 0 : o.encode(idx);
  }

  Obj object_expr() {
    if (at("(")) {
      next();
      expect(")");
      return Obj::unit();
    }
    Obj o = Obj::unit();
    while (peek().kind == Token::word) {
      const auto& t = next();
      Polarity p = Polarity::plus;
      if (at("-")) {
        next();
        p = Polarity::minus;
      }
      o = o * Obj(object(t), p);
    }
    if (o.arity() == 0) fail("expected an object expression", peek());
    return o;
  }

  void pairs_into(FinRel& r) {
    expect("{");
    while (!at("}")) {
      expect("(");
      auto a = obj_element(r.src());
      expect(",");
      auto b = obj_element(r.dst());
      expect(")");
      r.set(a, b);
    }
    expect("}");
  }

  std::vector<std::size_t> tuple(const FinSet& s, std::size_t k) {
    expect("(");
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < k; ++i) {
      if (i) expect(",");
      v.push_back(element(s));
    }
    expect(")");
    return v;
  }

  // "-> c" or "-> { c ... }"
  std::vector<std::size_t> targets(const FinSet& s) {
    expect("->");
    std::vector<std::size_t> out;
    if (at("{")) {
      next();
      while (!at("}")) out.push_back(element(s));
      next();
    } else {
      out.push_back(element(s));
    }
    return out;
  }

  void declaration() {
    const Token start = peek();
    auto kw = word("a declaration keyword");
    auto name_tok = peek();
    auto name = word("a declaration name");
    if (doc_.find(name)) fail("duplicate declaration '" + name + "'", name_tok);
    try {
      if (kw == "object") object_decl(name);
      else if (kw == "rel") rel_decl(name);
      else if (kw == "frob2") frob2_decl(name);
      else if (kw == "frob3") frob3_decl(name);
      else if (kw == "connector") connector_decl(name);
      else if (kw == "groupoid") groupoid_decl(name);
      else fail("unknown declaration '" + kw + "'", start);
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      fail(kw + " " + name + ": " + e.what(), start);
    }
  }

  void object_decl(const std::string& name) {
    auto n = number("the object size");
    std::vector<std::string> labels;
    while (peek().kind == Token::word && peek().line == toks_[pos_ - 1].line) labels.push_back(next().text);
    if (!labels.empty() && labels.size() != n)
      fail("object " + name + " has " + std::to_string(labels.size()) + " labels for size " + std::to_string(n), peek());
    doc_.add(name, labels.empty() ? FinSet(name, n) : FinSet(name, labels));
  }

  void rel_decl(const std::string& name) {
    expect(":");
    auto src = object_expr();
    expect("->");
    auto dst = object_expr();
    FinRel r(src, dst);
    pairs_into(r);
    doc_.add(name, std::move(r));
  }

  FinSet carrier_clause() {
    if (!at_word("carrier")) fail("expected 'carrier'", peek());
    next();
    return object(next());
  }

  void frob2_decl(const std::string& name) {
    expect("{");
    auto a = carrier_clause();
    Frob2 f(a);
    while (!at("}")) {
      auto t = peek();
      auto kw = word("'unit' or 'mult'");
      if (kw == "unit") {
        expect("{");
        while (!at("}")) f.unit[element(a)] = true;
        next();
      } else if (kw == "mult") {
        expect("{");
        while (!at("}")) {
          auto ab = tuple(a, 2);
          for (auto c : targets(a)) f.set_m(ab[0], ab[1], c);
        }
        next();
      } else {
        fail("unknown frob2 clause '" + kw + "'", t);
      }
    }
    next();
    doc_.add(name, std::move(f));
  }

  void frob3_decl(const std::string& name) {
    expect("{");
    auto a = carrier_clause();
    Frob3 t(a);
    while (!at("}")) {
      auto tok = peek();
      if (word("'lambda'") != "lambda") fail("unknown frob3 clause '" + tok.text + "'", tok);
      expect("{");
      while (!at("}")) {
        auto xyz = tuple(a, 3);
        for (auto u : targets(a)) t.set(xyz[0], xyz[1], xyz[2], u);
      }
      next();
    }
    next();
    doc_.add(name, std::move(t));
  }

  void connector_decl(const std::string& name) {
    expect("{");
    auto a = carrier_clause();
    Connector c(a);
    while (!at("}")) {
      auto tok = peek();
      auto kw = word("'releq' or 'p'");
      if (kw == "releq") {
        auto which = peek();
        auto w = word("R or S");
        if (w != "R" && w != "S") fail("releq must name R or S", which);
        pairs_into(w == "R" ? c.R_eq : c.S_eq);
      } else if (kw == "p") {
        expect("{");
        while (!at("}")) {
          auto xyz = tuple(a, 3);
          auto tt = peek();
          auto ws = targets(a);
          if (ws.size() != 1) fail("p must have a single value", tt);
          c.set(xyz[0], xyz[1], xyz[2], ws[0]);
        }
        next();
      } else {
        fail("unknown connector clause '" + kw + "'", tok);
      }
    }
    next();
    doc_.add(name, std::move(c));
  }

  FinSet size_or_object(const std::string& fallback_name) {
    auto t = peek();
    auto w = word("a size or object name");
    if (std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return FinSet(fallback_name, std::stoul(w));
    return object(t);
  }

  void groupoid_decl(const std::string& name) {
    expect("{");
    if (!at_word("objects")) fail("expected 'objects'", peek());
    next();
    auto objs = size_or_object(name + "0");
    if (!at_word("morphisms")) fail("expected 'morphisms'", peek());
    next();
    auto arrs = size_or_object(name);
    Groupoid g(objs, arrs);
    std::vector<std::string> tags;
    while (!at("}")) {
      auto tok = peek();
      auto kw = word("a groupoid clause");
      if (kw == "source" || kw == "target" || kw == "inverse") {
        auto& v = kw == "source" ? g.source : kw == "target" ? g.target : g.inverse;
        const auto& s = kw == "inverse" ? arrs : objs;
        for (std::size_t i = 0; i < arrs.size; ++i) v[i] = element(s);
      } else if (kw == "unit") {
        for (std::size_t i = 0; i < objs.size; ++i) g.unit[i] = element(arrs);
      } else if (kw == "compose") {
        expect("{");
        while (!at("}")) {
          auto ab = tuple(arrs, 2);
          auto tt = peek();
          auto cs = targets(arrs);
          if (cs.size() != 1) fail("compose must have a single value", tt);
          g.set_compose(ab[0], ab[1], cs[0]);
        }
        next();
      } else if (kw == "tags") {
        expect("{");
        while (!at("}")) tags.push_back(word("a tag"));
        next();
        if (tags.size() != arrs.size) fail("tags must list one word per morphism", tok);
      } else {
        fail("unknown groupoid clause '" + kw + "'", tok);
      }
    }
    next();
    doc_.add(name, std::move(g), std::move(tags));
  }
};

}  // namespace detail

inline Document parse(const std::string& text) { return detail::Loader(text).run(); }

inline Document load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

// -------------------------------------------------------------- printer

namespace detail {

inline std::string elem(const FinSet& s, std::size_t i) { return s.labels.empty() ? std::to_string(i) : s.labels[i]; }

inline std::string obj_elem(const Obj& o, std::size_t idx) {
  if (o.arity() == 1) return elem(o.factors()[0].set, idx);
  auto parts = o.decode(idx);
  std::string s = "(";
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? "," : "") + elem(o.factors()[k].set, parts[k]);
  return s + ")";
}

inline std::string obj_expr(const Obj& o) {
  if (o.arity() == 0) return "()";
  std::string s;
  for (std::size_t k = 0; k < o.arity(); ++k) {
    if (k) s += " ";
    s += o.factors()[k].set.name;
    if (o.factors()[k].polarity == Polarity::minus) s += "-";
  }
  return s;
}

inline void collect_sets(const Entry& e, std::vector<FinSet>& out) {
  auto add = [&](const FinSet& s) {
    for (const auto& t : out)
      if (t.name == s.name) {
        if (!(t == s) || t.labels != s.labels) throw InputError("two different objects share the name '" + s.name + "'");
        return;
      }
    out.push_back(s);
  };
  auto add_obj = [&](const Obj& o) {
    for (const auto& f : o.factors()) add(f.set);
  };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FinSet>) add(v);
        else if constexpr (std::is_same_v<T, FinRel>) {
          add_obj(v.src());
          add_obj(v.dst());
        } else if constexpr (std::is_same_v<T, Groupoid>) {
          if (!v.objects.labels.empty()) add(v.objects);
          if (!v.arrows.labels.empty()) add(v.arrows);
        } else {
          add(v.carrier);
        }
      },
      e.value);
}

inline std::string pair_block(const FinRel& r, const std::string& indent) {
  std::string s = "{";
  for (auto [a, b] : r.pairs()) s += "\n" + indent + "  (" + obj_elem(r.src(), a) + "," + obj_elem(r.dst(), b) + ")";
  return s + (r.count() ? "\n" + indent : " ") + "}";
}

inline std::string targets(const FinSet& s, const std::vector<std::size_t>& cs) {
  std::string out = "{";
  for (auto c : cs) out += " " + elem(s, c);
  return out + " }";
}

inline std::string print_entry(const Entry& e) {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FinSet>) {
          os << "object " << e.name << " " << v.size;
          for (const auto& l : v.labels) os << " " << l;
          os << "\n";
        } else if constexpr (std::is_same_v<T, FinRel>) {
          os << "rel " << e.name << " : " << obj_expr(v.src()) << " -> " << obj_expr(v.dst()) << " " << pair_block(v, "")
             << "\n";
        } else if constexpr (std::is_same_v<T, Frob2>) {
          const auto& a = v.carrier;
          os << "frob2 " << e.name << " {\n  carrier " << a.name << "\n  unit {";
          for (std::size_t x = 0; x < a.size; ++x)
            if (v.unit[x]) os << " " << elem(a, x);
          os << " }\n  mult {\n";
          for (std::size_t x = 0; x < a.size; ++x)
            for (std::size_t y = 0; y < a.size; ++y)
              if (v.defined(x, y))
                os << "    (" << elem(a, x) << "," << elem(a, y) << ") -> " << targets(a, v.mult.image(x * a.size + y))
                   << "\n";
          os << "  }\n}\n";
        } else if constexpr (std::is_same_v<T, Frob3>) {
          const auto& a = v.carrier;
          os << "frob3 " << e.name << " {\n  carrier " << a.name << "\n  lambda {\n";
          for (std::size_t x = 0; x < a.size; ++x)
            for (std::size_t y = 0; y < a.size; ++y)
              for (std::size_t z = 0; z < a.size; ++z)
                if (!v.lambda.row_empty(v.row(x, y, z)))
                  os << "    (" << elem(a, x) << "," << elem(a, y) << "," << elem(a, z) << ") -> "
                     << targets(a, v.lambda.image(v.row(x, y, z))) << "\n";
          os << "  }\n}\n";
        } else if constexpr (std::is_same_v<T, Connector>) {
          const auto& a = v.carrier;
          os << "connector " << e.name << " {\n  carrier " << a.name << "\n  releq R " << pair_block(v.R_eq, "  ")
             << "\n  releq S " << pair_block(v.S_eq, "  ") << "\n  p {\n";
          for (std::size_t x = 0; x < a.size; ++x)
            for (std::size_t y = 0; y < a.size; ++y)
              for (std::size_t z = 0; z < a.size; ++z)
                if (auto w = v.at(x, y, z))
                  os << "    (" << elem(a, x) << "," << elem(a, y) << "," << elem(a, z) << ") -> " << elem(a, *w) << "\n";
          os << "  }\n}\n";
        } else {
          const auto& o = v.objects;
          const auto& m = v.arrows;
          auto size_or_name = [](const FinSet& s) { return s.labels.empty() ? std::to_string(s.size) : s.name; };
          os << "groupoid " << e.name << " {\n  objects " << size_or_name(o) << "\n  morphisms " << size_or_name(m);
          auto row = [&](const char* kw, const std::vector<std::size_t>& xs, const FinSet& s) {
            os << "\n  " << kw;
            for (auto x : xs) os << " " << elem(s, x);
          };
          row("source", v.source, o);
          row("target", v.target, o);
          row("unit", v.unit, m);
          row("inverse", v.inverse, m);
          os << "\n  compose {\n";
          for (std::size_t a = 0; a < m.size; ++a)
            for (std::size_t b = 0; b < m.size; ++b)
              if (auto c = v.compose(a, b)) os << "    (" << elem(m, a) << "," << elem(m, b) << ") -> " << elem(m, *c) << "\n";
          os << "  }\n";
          if (!e.tags.empty()) {
            os << "  tags {";
            for (const auto& t : e.tags) os << " " << t;
            os << " }\n";
          }
          os << "}\n";
        }
      },
      e.value);
  return os.str();
}

}  // namespace detail

// Canonical text: objects first, then the remaining declarations in order.
// Carriers that are not declared are emitted as objects.
inline std::string to_string(const Document& doc) {
  std::vector<FinSet> sets;
  for (const auto& e : doc.entries()) detail::collect_sets(e, sets);
  std::string out;
  std::set<std::string> declared;
  for (const auto& s : sets) {
    out += detail::print_entry({s.name, s, {}});
    declared.insert(s.name);
  }
  for (const auto& e : doc.entries()) {
    if (std::holds_alternative<FinSet>(e.value)) {
      if (!declared.count(e.name)) {
        out += detail::print_entry(e);
        declared.insert(e.name);
      }
      continue;
    }
    if (declared.count(e.name)) throw InputError("declaration '" + e.name + "' clashes with an object name");
  }
  for (const auto& e : doc.entries()) {
    if (std::holds_alternative<FinSet>(e.value)) continue;
    out += "\n" + detail::print_entry(e);
  }
  return out;
}

inline void save(const Document& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << to_string(doc);
}

}  // namespace frobrel::frl
