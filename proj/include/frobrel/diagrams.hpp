#pragma once

// String-diagram terms over the ternary generators: parsing, printing,
// typing, relational evaluation, graph analysis and spider normal forms.

#include <cctype>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frobrel/frob3.hpp"

namespace frobrel::diagrams {

using TypeWord = std::vector<Polarity>;

inline std::string word_to_string(const TypeWord& w) {
  std::string s;
  for (auto p : w) s += p == Polarity::plus ? '+' : '-';
  return s;
}

inline TypeWord word_from_string(std::string_view s) {
  TypeWord w;
  for (char c : s) {
    if (c == '+') w.push_back(Polarity::plus);
    else if (c == '-') w.push_back(Polarity::minus);
    else throw PreconditionError(std::string("type word contains '") + c + "'");
  }
  return w;
}

inline TypeWord concat(TypeWord a, const TypeWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Odd length, alternating, starting and ending with plus.
inline bool is_spider_word(const TypeWord& w) {
  if (w.size() % 2 == 0) return false;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != (i % 2 == 0 ? Polarity::plus : Polarity::minus)) return false;
  return true;
}

inline TypeWord alternating_word(std::size_t len) {
  TypeWord w(len);
  for (std::size_t i = 0; i < len; ++i) w[i] = i % 2 == 0 ? Polarity::plus : Polarity::minus;
  return w;
}

enum class Gen { mu3, comu3, cup, cupx, cap, capx, id_plus, id_minus, swap };

class Term {
 public:
  enum class Kind { generator, compose, tensor };

  static Term gen(Gen g) {
    if (g == Gen::swap) throw PreconditionError("swap needs its two type words");
    return Term(std::make_shared<const Node>(Node{Kind::generator, g, {}, {}, {}, {}}));
  }
  static Term swap(TypeWord a, TypeWord b) {
    if (a.empty() || b.empty()) throw PreconditionError("swap words must be non-empty");
    return Term(std::make_shared<const Node>(Node{Kind::generator, Gen::swap, std::move(a), std::move(b), {}, {}}));
  }
  static Term seq(const Term& first, const Term& then) {
    return Term(std::make_shared<const Node>(Node{Kind::compose, Gen::mu3, {}, {}, first.node_, then.node_}));
  }
  static Term par(const Term& left, const Term& right) {
    return Term(std::make_shared<const Node>(Node{Kind::tensor, Gen::mu3, {}, {}, left.node_, right.node_}));
  }

  Kind kind() const { return node_->kind; }
  Gen generator() const { return node_->gen; }
  const TypeWord& swap_left() const { return node_->w1; }
  const TypeWord& swap_right() const { return node_->w2; }
  Term first() const { return Term(node_->a); }
  Term second() const { return Term(node_->b); }

  friend bool operator==(const Term& x, const Term& y) {
    if (x.node_ == y.node_) return true;
    if (x.kind() != y.kind()) return false;
    if (x.kind() == Kind::generator)
      return x.generator() == y.generator() && x.swap_left() == y.swap_left() && x.swap_right() == y.swap_right();
    return x.first() == y.first() && x.second() == y.second();
  }

 private:
  struct Node {
    Kind kind;
    Gen gen;
    TypeWord w1, w2;
    std::shared_ptr<const Node> a, b;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Sequential composition of a list of optional pieces; absent pieces are skipped.
inline std::optional<Term> seq_all(const std::vector<std::optional<Term>>& parts) {
  std::optional<Term> out;
  for (const auto& p : parts)
    if (p) out = out ? Term::seq(*out, *p) : *p;
  return out;
}

inline std::optional<Term> par_all(const std::vector<std::optional<Term>>& parts) {
  std::optional<Term> out;
  for (const auto& p : parts)
    if (p) out = out ? Term::par(*out, *p) : *p;
  return out;
}

inline std::optional<Term> id_word(const TypeWord& w) {
  std::vector<std::optional<Term>> parts;
  for (auto p : w) parts.push_back(Term::gen(p == Polarity::plus ? Gen::id_plus : Gen::id_minus));
  return par_all(parts);
}

// ---------------------------------------------------------------- printing

inline std::string gen_name(Gen g) {
  switch (g) {
    case Gen::mu3: return "mu3";
    case Gen::comu3: return "comu3";
    case Gen::cup: return "cup";
    case Gen::cupx: return "cupx";
    case Gen::cap: return "cap";
    case Gen::capx: return "capx";
    case Gen::id_plus: return "id+";
    case Gen::id_minus: return "id-";
    case Gen::swap: return "swap";
  }
  return "?";
}

namespace detail {

// Precedence: 0 = sequence, 1 = tensor, 2 = atom.
inline void print_into(const Term& t, std::string& out, int context) {
  switch (t.kind()) {
    case Term::Kind::generator:
      if (t.generator() == Gen::swap)
        out += "swap(" + word_to_string(t.swap_left()) + "," + word_to_string(t.swap_right()) + ")";
      else
        out += gen_name(t.generator());
      return;
    case Term::Kind::compose: {
      bool paren = context > 0;
      if (paren) out += "(";
      print_into(t.first(), out, 0);
      out += " ; ";
      print_into(t.second(), out, 1);
      if (paren) out += ")";
      return;
    }
    case Term::Kind::tensor: {
      bool paren = context > 1;
      if (paren) out += "(";
      print_into(t.first(), out, 1);
      out += " * ";
      print_into(t.second(), out, 2);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace detail

inline std::string print(const Term& t) {
  std::string s;
  detail::print_into(t, s, 0);
  return s;
}

// ----------------------------------------------------------------- parsing

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse_all() {
    skip_ws();
    if (at_end()) fail("empty term");
    Term t = parse_seq();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return t;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;

  bool at_end() const { return pos_ >= text_.size(); }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, col_); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Term parse_seq() {
    Term t = parse_par();
    while (accept(';')) t = Term::seq(t, parse_par());
    return t;
  }

  Term parse_par() {
    Term t = parse_atom();
    while (accept('*')) t = Term::par(t, parse_atom());
    return t;
  }

  TypeWord parse_word() {
    skip_ws();
    std::string w;
    while (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      w += text_[pos_];
      advance();
    }
    if (w.empty()) fail("expected a type word of '+' and '-'");
    return word_from_string(w);
  }

  Term parse_atom() {
    skip_ws();
    if (at_end()) fail("unexpected end of term");
    if (accept('(')) {
      Term t = parse_seq();
      expect(')');
      return t;
    }
    std::size_t line = line_, col = col_;
    std::string id;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
      id += text_[pos_];
      advance();
    }
    if (id == "id" && !at_end() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      id += text_[pos_];
      advance();
    }
    if (id.empty()) fail(std::string("unexpected '") + text_[pos_] + "'");
    if (id == "mu3") return Term::gen(Gen::mu3);
    if (id == "comu3") return Term::gen(Gen::comu3);
    if (id == "cup") return Term::gen(Gen::cup);
    if (id == "cupx") return Term::gen(Gen::cupx);
    if (id == "cap") return Term::gen(Gen::cap);
    if (id == "capx") return Term::gen(Gen::capx);
    if (id == "id+") return Term::gen(Gen::id_plus);
    if (id == "id-") return Term::gen(Gen::id_minus);
    if (id == "swap") {
      expect('(');
      auto a = parse_word();
      expect(',');
      auto b = parse_word();
      expect(')');
      return Term::swap(std::move(a), std::move(b));
    }
    throw SyntaxError("unknown generator '" + id + "'", line, col);
  }
};

}  // namespace detail

inline Term parse(std::string_view text) { return detail::Parser(text).parse_all(); }

// ------------------------------------------------------------------ typing

struct Typing {
  TypeWord in, out;
  friend bool operator==(const Typing&, const Typing&) = default;
};

inline Typing generator_type(Gen g) {
  using enum Polarity;
  switch (g) {
    case Gen::mu3: return {{plus, minus, plus}, {plus}};
    case Gen::comu3: return {{plus}, {plus, minus, plus}};
    case Gen::cup: return {{}, {minus, plus}};
    case Gen::cupx: return {{}, {plus, minus}};
    case Gen::cap: return {{plus, minus}, {}};
    case Gen::capx: return {{minus, plus}, {}};
    case Gen::id_plus: return {{plus}, {plus}};
    case Gen::id_minus: return {{minus}, {minus}};
    case Gen::swap: break;
  }
  throw PreconditionError("swap has no fixed type");
}

inline std::string signature(const Typing& t) {
  return "(" + word_to_string(t.in) + ") -> (" + word_to_string(t.out) + ")";
}

// Swaps are only admitted when `commutative` is set.
inline Typing typecheck(const Term& t, bool commutative = false) {
  switch (t.kind()) {
    case Term::Kind::generator:
      if (t.generator() == Gen::swap) {
        if (!commutative) throw TypeError("swap is only admitted in commutative mode: " + print(t));
        return {concat(t.swap_left(), t.swap_right()), concat(t.swap_right(), t.swap_left())};
      }
      return generator_type(t.generator());
    case Term::Kind::compose: {
      auto a = typecheck(t.first(), commutative);
      auto b = typecheck(t.second(), commutative);
      if (a.out != b.in)
        throw TypeError("cannot compose " + print(t.first()) + " : " + signature(a) + " with " + print(t.second()) + " : " +
                        signature(b));
      return {a.in, b.out};
    }
    case Term::Kind::tensor: {
      auto a = typecheck(t.first(), commutative);
      auto b = typecheck(t.second(), commutative);
      return {concat(a.in, b.in), concat(a.out, b.out)};
    }
  }
  throw TypeError("malformed term");
}

inline bool uses_swap(const Term& t) {
  if (t.kind() == Term::Kind::generator) return t.generator() == Gen::swap;
  return uses_swap(t.first()) || uses_swap(t.second());
}

inline std::size_t node_count(const Term& t) {
  if (t.kind() == Term::Kind::generator) return t.generator() == Gen::mu3 || t.generator() == Gen::comu3 ? 1 : 0;
  return node_count(t.first()) + node_count(t.second());
}

// -------------------------------------------------------------- evaluation

namespace detail {

struct EvalContext {
  const Frob3& s;
  FinRel mu, comu;
  explicit EvalContext(const Frob3& t) : s(t), mu(t.lambda), comu(dagger(t.lambda)) {}

  Obj word(const TypeWord& w) const { return Obj::word(s.carrier, w); }

  FinRel eval(const Term& t) const {
    switch (t.kind()) {
      case Term::Kind::generator:
        switch (t.generator()) {
          case Gen::mu3: return mu;
          case Gen::comu3: return comu;
          case Gen::cup: return frobrel::cup(s.carrier);
          case Gen::cupx: return cup_swapped(s.carrier);
          case Gen::cap: return frobrel::cap(s.carrier);
          case Gen::capx: return cap_swapped(s.carrier);
          case Gen::id_plus: return identity(Obj(s.carrier, Polarity::plus));
          case Gen::id_minus: return identity(Obj(s.carrier, Polarity::minus));
          case Gen::swap: return frobrel::swap(word(t.swap_left()), word(t.swap_right()));
        }
        break;
      case Term::Kind::compose: return compose(eval(t.first()), eval(t.second()));
      case Term::Kind::tensor: return tensor(eval(t.first()), eval(t.second()));
    }
    throw TypeError("malformed term");
  }
};

}  // namespace detail

// Relational semantics. In commutative mode the structure must be commutative.
inline FinRel eval(const Term& t, const Frob3& s, bool commutative = false) {
  auto ty = typecheck(t, commutative);
  if (commutative && !check_commutative3(s)) throw PreconditionError("eval: commutative mode needs a commutative structure");
  auto r = detail::EvalContext(s).eval(t);
  return r.with_boundaries(Obj::word(s.carrier, ty.in), Obj::word(s.carrier, ty.out));
}

// ------------------------------------------------------------------ graphs

struct OpenGraph {
  enum class EndKind { node, input, output };
  struct End {
    EndKind kind;
    std::size_t index;
    std::size_t port;  // node ports: 0,1,2 = legs x,y,z; 3 = u
  };
  struct Wire {
    End a, b;
  };
  std::vector<Gen> nodes;  // mu3 or comu3
  std::size_t inputs = 0, outputs = 0;
  std::vector<Wire> wires;
  std::size_t free_loops = 0;  // circles touching no node or boundary
  // wire attached to (node, port)
  std::vector<std::array<std::size_t, 4>> node_wire;
};

struct LoopProfile {
  std::size_t internal_loop_count = 0;
  bool connected = false;
};

namespace detail {

class UnionFind {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

struct GraphBuilder {
  UnionFind points;
  std::vector<std::pair<OpenGraph::End, std::size_t>> attached;
  OpenGraph g;

  std::vector<std::size_t> build(const Term& t, std::vector<std::size_t> in) {
    switch (t.kind()) {
      case Term::Kind::generator:
        switch (t.generator()) {
          case Gen::id_plus:
          case Gen::id_minus: return in;
          case Gen::swap: {
            std::size_t k = t.swap_left().size();
            std::vector<std::size_t> out(in.begin() + static_cast<std::ptrdiff_t>(k), in.end());
            out.insert(out.end(), in.begin(), in.begin() + static_cast<std::ptrdiff_t>(k));
            return out;
          }
          case Gen::cup:
          case Gen::cupx: {
            std::size_t p = points.add();
            return {p, p};
          }
          case Gen::cap:
          case Gen::capx: points.unite(in[0], in[1]); return {};
          case Gen::mu3: {
            std::size_t k = g.nodes.size();
            g.nodes.push_back(Gen::mu3);
            for (std::size_t i = 0; i < 3; ++i) attached.push_back({{OpenGraph::EndKind::node, k, i}, in[i]});
            std::size_t q = points.add();
            attached.push_back({{OpenGraph::EndKind::node, k, 3}, q});
            return {q};
          }
          case Gen::comu3: {
            std::size_t k = g.nodes.size();
            g.nodes.push_back(Gen::comu3);
            attached.push_back({{OpenGraph::EndKind::node, k, 3}, in[0]});
            std::vector<std::size_t> out;
            for (std::size_t i = 0; i < 3; ++i) {
              std::size_t q = points.add();
              attached.push_back({{OpenGraph::EndKind::node, k, i}, q});
              out.push_back(q);
            }
            return out;
          }
        }
        break;
      case Term::Kind::compose: return build(t.second(), build(t.first(), std::move(in)));
      case Term::Kind::tensor: {
        std::size_t k = typecheck(t.first(), true).in.size();
        std::vector<std::size_t> left(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(k));
        std::vector<std::size_t> right(in.begin() + static_cast<std::ptrdiff_t>(k), in.end());
        auto out = build(t.first(), std::move(left));
        auto r = build(t.second(), std::move(right));
        out.insert(out.end(), r.begin(), r.end());
        return out;
      }
    }
    throw TypeError("malformed term");
  }
};

}  // namespace detail

inline OpenGraph to_graph(const Term& t) {
  auto ty = typecheck(t, true);
  detail::GraphBuilder b;
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < ty.in.size(); ++i) {
    std::size_t p = b.points.add();
    b.attached.push_back({{OpenGraph::EndKind::input, i, 0}, p});
    in.push_back(p);
  }
  auto out = b.build(t, in);
  for (std::size_t j = 0; j < out.size(); ++j) b.attached.push_back({{OpenGraph::EndKind::output, j, 0}, out[j]});
  b.g.inputs = ty.in.size();
  b.g.outputs = ty.out.size();

  std::vector<std::vector<OpenGraph::End>> by_class(b.points.size());
  for (const auto& [end, p] : b.attached) by_class[b.points.find(p)].push_back(end);
  std::vector<bool> is_root(b.points.size(), false);
  for (std::size_t p = 0; p < b.points.size(); ++p) is_root[b.points.find(p)] = true;
  b.g.node_wire.assign(b.g.nodes.size(), {SIZE_MAX, SIZE_MAX, SIZE_MAX, SIZE_MAX});
  for (std::size_t p = 0; p < b.points.size(); ++p) {
    if (!is_root[p]) continue;
    const auto& ends = by_class[p];
    if (ends.empty()) {
      ++b.g.free_loops;
      continue;
    }
    if (ends.size() != 2) throw TypeError("internal: wire with " + std::to_string(ends.size()) + " ends");
    std::size_t w = b.g.wires.size();
    b.g.wires.push_back({ends[0], ends[1]});
    for (const auto& e : ends)
      if (e.kind == OpenGraph::EndKind::node) b.g.node_wire[e.index][e.port] = w;
  }
  return b.g;
}

inline LoopProfile loop_profile(const OpenGraph& g) {
  // Vertices: nodes, then inputs, then outputs.
  const std::size_t v = g.nodes.size() + g.inputs + g.outputs;
  detail::UnionFind uf;
  for (std::size_t i = 0; i < v; ++i) uf.add();
  auto vertex = [&](const OpenGraph::End& e) {
    switch (e.kind) {
      case OpenGraph::EndKind::node: return e.index;
      case OpenGraph::EndKind::input: return g.nodes.size() + e.index;
      case OpenGraph::EndKind::output: return g.nodes.size() + g.inputs + e.index;
    }
    return std::size_t{0};
  };
  for (const auto& w : g.wires) uf.unite(vertex(w.a), vertex(w.b));
  std::size_t comps = 0;
  for (std::size_t i = 0; i < v; ++i)
    if (uf.find(i) == i) ++comps;
  LoopProfile p;
  p.internal_loop_count = g.wires.size() + comps - v + g.free_loops;
  p.connected = comps + g.free_loops == 1;
  return p;
}

struct FaceCount {
  std::size_t left = 0;   // closed faces between the x and y legs of a node (left loops)
  std::size_t right = 0;  // closed faces between the y and z legs (right loops)
};

// Counts closed faces of a planar diagram. Each wire carries two strands: 1 on
// the left of its direction of flow, 2 on the right. Inside a node the strands
// join as u.1–x.1, x.2–y.2, y.1–z.1, z.2–u.2. A strand cycle meeting no
// boundary wire bounds an internal face; colour 2 faces are left loops.
inline FaceCount count_faces(const OpenGraph& g) {
  detail::UnionFind uf;
  for (std::size_t i = 0; i < 2 * g.wires.size(); ++i) uf.add();
  auto strand = [](std::size_t w, int colour) { return 2 * w + static_cast<std::size_t>(colour - 1); };
  for (const auto& nw : g.node_wire) {
    uf.unite(strand(nw[3], 1), strand(nw[0], 1));
    uf.unite(strand(nw[0], 2), strand(nw[1], 2));
    uf.unite(strand(nw[1], 1), strand(nw[2], 1));
    uf.unite(strand(nw[2], 2), strand(nw[3], 2));
  }
  std::vector<bool> open(2 * g.wires.size(), false);
  for (std::size_t w = 0; w < g.wires.size(); ++w) {
    bool boundary = g.wires[w].a.kind != OpenGraph::EndKind::node || g.wires[w].b.kind != OpenGraph::EndKind::node;
    if (boundary) {
      open[uf.find(strand(w, 1))] = true;
      open[uf.find(strand(w, 2))] = true;
    }
  }
  FaceCount f;
  for (std::size_t s = 0; s < 2 * g.wires.size(); ++s) {
    if (uf.find(s) != s || open[s]) continue;
    (s % 2 == 0 ? f.right : f.left) += 1;
  }
  return f;
}

// ---------------------------------------------------------- spider terms

inline Term left_loop_term() {
  return Term::seq(Term::par(Term::gen(Gen::cupx), Term::gen(Gen::id_plus)), Term::gen(Gen::mu3));
}

inline Term right_loop_term() {
  return Term::seq(Term::par(Term::gen(Gen::id_plus), Term::gen(Gen::cup)), Term::gen(Gen::mu3));
}

namespace detail {

// Left-nested comb of multiplications on an alternating word, or nothing for (+).
inline std::optional<Term> mult_comb(const TypeWord& in) {
  std::vector<std::optional<Term>> layers;
  for (std::size_t width = in.size(); width > 1; width -= 2) {
    TypeWord rest(in.begin() + static_cast<std::ptrdiff_t>(in.size() - width + 3), in.end());
    layers.push_back(par_all({Term::gen(Gen::mu3), id_word(rest)}));
  }
  return seq_all(layers);
}

// Mirror image of mult_comb: comultiplications fanning out to an alternating word.
inline std::optional<Term> comult_comb(const TypeWord& out) {
  std::vector<std::optional<Term>> layers;
  for (std::size_t width = 3; width <= out.size(); width += 2) {
    TypeWord rest(out.begin() + static_cast<std::ptrdiff_t>(out.size() - width + 3), out.end());
    layers.push_back(par_all({Term::gen(Gen::comu3), id_word(rest)}));
  }
  return seq_all(layers);
}

inline std::optional<Term> loops(std::size_t m, std::size_t n) {
  std::vector<std::optional<Term>> parts;
  for (std::size_t i = 0; i < m; ++i) parts.push_back(left_loop_term());
  for (std::size_t i = 0; i < n; ++i) parts.push_back(right_loop_term());
  return seq_all(parts);
}

}  // namespace detail

// Canonical normal form: multiplication comb, m left loops, n right loops,
// comultiplication comb. With empty words it is the closed trace of m loops
// (commutative descriptors only, n = 0).
inline Term spider(std::size_t m, std::size_t n, const TypeWord& in, const TypeWord& out) {
  if (in.empty() && out.empty()) {
    if (n != 0 || m == 0) throw PreconditionError("spider: a closed spider needs n = 0 and m >= 1");
    auto body = seq_all({detail::loops(m - 1, 0), Term::gen(Gen::id_plus)});
    return Term::seq(Term::seq(Term::gen(Gen::cupx), Term::par(*body, Term::gen(Gen::id_minus))), Term::gen(Gen::cap));
  }
  if (!is_spider_word(in) || !is_spider_word(out))
    throw PreconditionError("spider: unrealizable boundary (" + word_to_string(in) + ") -> (" + word_to_string(out) + ")");
  auto t = seq_all({detail::mult_comb(in), detail::loops(m, n), detail::comult_comb(out)});
  return t ? *t : Term::gen(Gen::id_plus);
}

// ---------------------------------------------------------------- bending

enum class BendKind { input_right, input_left, output_right, output_left, permute_inputs, permute_outputs };

struct BendOp {
  BendKind kind;
  std::vector<std::size_t> perm;  // permutations: new position k holds old position perm[k]
  friend bool operator==(const BendOp&, const BendOp&) = default;
};

struct Bending {
  std::vector<BendOp> ops;
  bool empty() const { return ops.empty(); }
  friend bool operator==(const Bending&, const Bending&) = default;
};

inline std::string bend_name(BendKind k) {
  switch (k) {
    case BendKind::input_right: return "input_right";
    case BendKind::input_left: return "input_left";
    case BendKind::output_right: return "output_right";
    case BendKind::output_left: return "output_left";
    case BendKind::permute_inputs: return "permute_inputs";
    case BendKind::permute_outputs: return "permute_outputs";
  }
  return "?";
}

// Adjacent-swap network from `from` to the word w with w[k] = from[perm[k]].
inline std::optional<Term> permutation_term(const TypeWord& from, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> cur(from.size());
  std::iota(cur.begin(), cur.end(), 0);
  std::vector<std::optional<Term>> layers;
  auto word_of = [&](std::size_t lo, std::size_t hi) {
    TypeWord w;
    for (std::size_t i = lo; i < hi; ++i) w.push_back(from[cur[i]]);
    return w;
  };
  for (std::size_t k = 0; k < perm.size(); ++k) {
    std::size_t j = static_cast<std::size_t>(std::find(cur.begin(), cur.end(), perm[k]) - cur.begin());
    for (; j > k; --j) {
      layers.push_back(par_all({id_word(word_of(0, j - 1)),
                                Term::swap({from[cur[j - 1]]}, {from[cur[j]]}),
                                id_word(word_of(j + 1, cur.size()))}));
      std::swap(cur[j - 1], cur[j]);
    }
  }
  return seq_all(layers);
}

inline std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> q(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) q[p[k]] = k;
  return q;
}

namespace detail {

inline Gen state_for(Polarity first) { return first == Polarity::plus ? Gen::cupx : Gen::cup; }
inline Gen effect_for(Polarity first) { return first == Polarity::plus ? Gen::cap : Gen::capx; }

}  // namespace detail

// Applies one bending step, returning the new term and boundary.
inline std::pair<Term, Typing> apply_bend(const Term& f, const Typing& ty, const BendOp& op) {
  using detail::effect_for;
  using detail::state_for;
  TypeWord in = ty.in, out = ty.out;
  switch (op.kind) {
    case BendKind::input_right: {
      if (in.empty()) throw PreconditionError("bend: no input to bend");
      Polarity t = in.back();
      in.pop_back();
      auto g = seq_all({par_all({id_word(in), Term::gen(state_for(t))}), par_all({f, id_word({flip(t)})})});
      out.push_back(flip(t));
      return {*g, {in, out}};
    }
    case BendKind::input_left: {
      if (in.empty()) throw PreconditionError("bend: no input to bend");
      Polarity t = in.front();
      in.erase(in.begin());
      auto g = seq_all({par_all({Term::gen(state_for(flip(t))), id_word(in)}), par_all({id_word({flip(t)}), f})});
      out.insert(out.begin(), flip(t));
      return {*g, {in, out}};
    }
    case BendKind::output_right: {
      if (out.empty()) throw PreconditionError("bend: no output to bend");
      Polarity s = out.back();
      out.pop_back();
      auto g = seq_all({par_all({f, id_word({flip(s)})}), par_all({id_word(out), Term::gen(effect_for(s))})});
      in.push_back(flip(s));
      return {*g, {in, out}};
    }
    case BendKind::output_left: {
      if (out.empty()) throw PreconditionError("bend: no output to bend");
      Polarity s = out.front();
      out.erase(out.begin());
      auto g = seq_all({par_all({id_word({flip(s)}), f}), par_all({Term::gen(effect_for(flip(s))), id_word(out)})});
      in.insert(in.begin(), flip(s));
      return {*g, {in, out}};
    }
    case BendKind::permute_inputs: {
      TypeWord nin(in.size());
      for (std::size_t k = 0; k < in.size(); ++k) nin[k] = in[op.perm.at(k)];
      auto g = seq_all({permutation_term(nin, inverse_perm(op.perm)), f});
      return {*g, {nin, out}};
    }
    case BendKind::permute_outputs: {
      TypeWord nout(out.size());
      for (std::size_t k = 0; k < out.size(); ++k) nout[k] = out[op.perm.at(k)];
      auto g = seq_all({f, permutation_term(out, op.perm)});
      return {*g, {in, nout}};
    }
  }
  throw PreconditionError("bend: unknown step");
}

inline Term apply_bending(const Term& t, const Bending& b) {
  Term cur = t;
  Typing ty = typecheck(t, true);
  for (const auto& op : b.ops) std::tie(cur, ty) = apply_bend(cur, ty, op);
  return cur;
}

inline Typing bent_typing(const Typing& ty, const Bending& b) {
  Typing cur = ty;
  Term dummy = Term::gen(Gen::id_plus);
  for (const auto& op : b.ops) cur = apply_bend(dummy, cur, op).second;
  return cur;
}

// -------------------------------------------------------------- normalize

struct NormalFormDescriptor {
  TypeWord in_word, out_word;
  std::size_t m = 0, n = 0;
  Bending bending;
  bool commutative = false;
  friend bool operator==(const NormalFormDescriptor&, const NormalFormDescriptor&) = default;
};

inline Term spider_of(const NormalFormDescriptor& d) { return spider(d.m, d.n, d.in_word, d.out_word); }

namespace detail {

inline std::vector<std::size_t> alternating_perm(const TypeWord& w) {
  std::vector<std::size_t> plus, minus, perm;
  for (std::size_t i = 0; i < w.size(); ++i) (w[i] == Polarity::plus ? plus : minus).push_back(i);
  for (std::size_t k = 0; k < w.size(); ++k) perm.push_back(k % 2 == 0 ? plus[k / 2] : minus[k / 2]);
  return perm;
}

inline std::vector<std::size_t> move_to_end(std::size_t len, std::size_t i) {
  std::vector<std::size_t> perm;
  for (std::size_t k = 0; k < len; ++k)
    if (k != i) perm.push_back(k);
  perm.push_back(i);
  return perm;
}

inline bool is_identity_perm(const std::vector<std::size_t>& p) {
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != k) return false;
  return true;
}

inline std::size_t last_index_of(const TypeWord& w, Polarity p) {
  for (std::size_t i = w.size(); i-- > 0;)
    if (w[i] == p) return i;
  return SIZE_MAX;
}

inline std::ptrdiff_t balance(const TypeWord& w) {
  std::ptrdiff_t k = 0;
  for (auto p : w) k += p == Polarity::plus ? 1 : -1;
  return k;
}

}  // namespace detail

// Planar mode: loops are counted by face colour and the boundary is fixed by at
// most one input bend and one output bend, tried in the order none, right, left.
// Commutative mode: loops are the cycle rank (reported as m, with n = 0), and
// the boundary is fixed by swaps and repeated rightmost bends.
inline NormalFormDescriptor normalize(const Term& t, bool commutative = false) {
  auto ty = typecheck(t, commutative);
  auto g = to_graph(t);
  auto prof = loop_profile(g);
  if (!prof.connected) throw PreconditionError("normalize: diagram is not connected");
  NormalFormDescriptor d;
  d.commutative = commutative;

  if (!commutative) {
    if (ty.in.empty() && ty.out.empty())
      throw PreconditionError("normalize: closed diagrams have no normal form in non-commutative mode");
    auto faces = count_faces(g);
    d.m = faces.left;
    d.n = faces.right;
    const std::vector<std::optional<BendKind>> in_opts{std::nullopt, BendKind::input_right, BendKind::input_left};
    const std::vector<std::optional<BendKind>> out_opts{std::nullopt, BendKind::output_right, BendKind::output_left};
    for (const auto& bi : in_opts)
      for (const auto& bo : out_opts) {
        if ((bi && ty.in.empty()) || (bo && ty.out.empty())) continue;
        Bending b;
        if (bi) b.ops.push_back({*bi, {}});
        if (bo) b.ops.push_back({*bo, {}});
        // An output bent down right after an input was bent up would undo it.
        if (bi && bo && ty.out.empty()) continue;
        auto bt = bent_typing(ty, b);
        if (is_spider_word(bt.in) && is_spider_word(bt.out)) {
          d.in_word = bt.in;
          d.out_word = bt.out;
          d.bending = b;
          return d;
        }
      }
    throw PreconditionError("normalize: no bending of at most one input and one output reaches normal form boundary " +
                            signature(ty));
  }

  d.m = prof.internal_loop_count;
  d.n = 0;
  Typing cur = ty;
  auto push = [&](BendOp op) {
    if ((op.kind == BendKind::permute_inputs || op.kind == BendKind::permute_outputs) && detail::is_identity_perm(op.perm))
      return;
    cur = apply_bend(Term::gen(Gen::id_plus), cur, op).second;
    d.bending.ops.push_back(std::move(op));
  };
  while (!(cur.in.empty() && cur.out.empty())) {
    auto k = detail::balance(cur.in);
    if (!cur.in.empty() && k == 1) break;
    if (k > 1) {
      push({BendKind::permute_inputs, detail::move_to_end(cur.in.size(), detail::last_index_of(cur.in, Polarity::plus))});
      push({BendKind::input_right, {}});
    } else if (detail::last_index_of(cur.in, Polarity::plus) == SIZE_MAX &&
               detail::last_index_of(cur.out, Polarity::minus) != SIZE_MAX) {
      push({BendKind::permute_outputs,
            detail::move_to_end(cur.out.size(), detail::last_index_of(cur.out, Polarity::minus))});
      push({BendKind::output_right, {}});
    } else {
      push({BendKind::permute_inputs, detail::move_to_end(cur.in.size(), detail::last_index_of(cur.in, Polarity::minus))});
      push({BendKind::input_right, {}});
    }
  }
  if (!cur.in.empty()) {
    push({BendKind::permute_inputs, detail::alternating_perm(cur.in)});
    push({BendKind::permute_outputs, detail::alternating_perm(cur.out)});
  }
  d.in_word = cur.in;
  d.out_word = cur.out;
  return d;
}

// True iff both terms evaluate to the same relation on every structure.
inline bool corollary_check(const Term& t1, const Term& t2, const std::vector<Frob3>& structures, bool commutative = false) {
  auto a = typecheck(t1, commutative);
  auto b = typecheck(t2, commutative);
  if (!(a == b))
    throw ShapeError("corollary_check: boundary mismatch " + signature(a) + " vs " + signature(b));
  for (const auto& s : structures)
    if (!(eval(t1, s, commutative) == eval(t2, s, commutative))) return false;
  return true;
}

}  // namespace frobrel::diagrams
