#pragma once

// Relations between finite sets as bit matrices, with the compact dagger
// structure (composition, converse, tensor, cups, caps, biproducts).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frobrel/error.hpp"

namespace frobrel {

enum class Polarity : std::uint8_t { plus, minus };

inline Polarity flip(Polarity p) { return p == Polarity::plus ? Polarity::minus : Polarity::plus; }

struct FinSet {
  std::string name;
  std::size_t size = 0;
  std::vector<std::string> labels;  // empty, or exactly `size` distinct entries

  FinSet() = default;
  FinSet(std::string n, std::size_t s) : name(std::move(n)), size(s) {}
  FinSet(std::string n, std::vector<std::string> l) : name(std::move(n)), size(l.size()), labels(std::move(l)) {
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw PreconditionError("duplicate labels in finite set " + name);
  }

  std::string label(std::size_t i) const { return labels.empty() ? std::to_string(i) : labels.at(i); }
  std::optional<std::size_t> index_of(const std::string& token) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == token) return i;
    if (!token.empty() && std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      std::size_t v = std::stoul(token);
      if (v < size) return v;
    }
    return std::nullopt;
  }

  // Sets are compared by name and size; labels are presentation only.
  friend bool operator==(const FinSet& a, const FinSet& b) { return a.name == b.name && a.size == b.size; }
};

struct Factor {
  FinSet set;
  Polarity polarity = Polarity::plus;
};

// A tensor word of finite sets. The empty word is the monoidal unit I.
class Obj {
 public:
  Obj() = default;
  explicit Obj(std::vector<Factor> factors) : factors_(std::move(factors)) {}
  Obj(const FinSet& a, Polarity p = Polarity::plus) : factors_{Factor{a, p}} {}

  static Obj unit() { return Obj{}; }
  static Obj word(const FinSet& a, const std::vector<Polarity>& pols) {
    std::vector<Factor> f;
    f.reserve(pols.size());
    for (auto p : pols) f.push_back({a, p});
    return Obj(std::move(f));
  }

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t arity() const { return factors_.size(); }
  bool is_unit() const { return factors_.empty(); }

  std::size_t cardinality() const {
    std::size_t n = 1;
    for (const auto& f : factors_) n *= f.set.size;
    return n;
  }

  std::vector<Polarity> polarities() const {
    std::vector<Polarity> p;
    for (const auto& f : factors_) p.push_back(f.polarity);
    return p;
  }

  // Same sets in the same order; polarity is ignored.
  bool same_carrier(const Obj& o) const {
    if (o.factors_.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (!(factors_[i].set == o.factors_[i].set)) return false;
    return true;
  }

  std::size_t encode(std::span<const std::size_t> digits) const {
    if (digits.size() != factors_.size()) throw ShapeError("tuple arity does not match object " + to_string());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] >= factors_[i].set.size) throw ShapeError("tuple component out of range for " + to_string());
      idx = idx * factors_[i].set.size + digits[i];
    }
    return idx;
  }

  std::vector<std::size_t> decode(std::size_t idx) const {
    std::vector<std::size_t> d(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      d[i] = idx % factors_[i].set.size;
      idx /= factors_[i].set.size;
    }
    return d;
  }

  std::string to_string() const {
    if (factors_.empty()) return "I";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += " (x) ";
      s += factors_[i].set.name;
      if (factors_[i].polarity == Polarity::minus) s += "*";
    }
    return s;
  }

  friend Obj operator*(const Obj& a, const Obj& b) {
    auto f = a.factors_;
    f.insert(f.end(), b.factors_.begin(), b.factors_.end());
    return Obj(std::move(f));
  }

 private:
  std::vector<Factor> factors_;
};

// Boolean incidence matrix between two objects, stored as packed rows.
class FinRel {
 public:
  using word_t = std::uint64_t;

  FinRel() : FinRel(Obj::unit(), Obj::unit()) {}
  FinRel(Obj src, Obj dst)
      : src_(std::move(src)),
        dst_(std::move(dst)),
        rows_(src_.cardinality()),
        cols_(dst_.cardinality()),
        words_((cols_ + 63) / 64),
        bits_(rows_ * words_, 0) {}

  const Obj& src() const { return src_; }
  const Obj& dst() const { return dst_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool operator()(std::size_t a, std::size_t b) const { return (bits_[a * words_ + b / 64] >> (b % 64)) & 1u; }
  bool test(std::size_t a, std::size_t b) const {
    if (a >= rows_ || b >= cols_) throw ShapeError("relation index out of range");
    return (*this)(a, b);
  }
  void set(std::size_t a, std::size_t b, bool v = true) {
    word_t& w = bits_[a * words_ + b / 64];
    word_t m = word_t{1} << (b % 64);
    w = v ? (w | m) : (w & ~m);
  }

  std::span<const word_t> row(std::size_t a) const { return {bits_.data() + a * words_, words_}; }
  std::span<word_t> row(std::size_t a) { return {bits_.data() + a * words_, words_}; }

  bool row_empty(std::size_t a) const {
    for (auto w : row(a))
      if (w) return false;
    return true;
  }

  template <class F>
  void for_each_in_row(std::size_t a, F&& f) const {
    auto r = row(a);
    for (std::size_t k = 0; k < words_; ++k) {
      word_t w = r[k];
      while (w) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> image(std::size_t a) const {
    std::vector<std::size_t> out;
    for_each_in_row(a, [&](std::size_t b) { out.push_back(b); });
    return out;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < rows_; ++a) for_each_in_row(a, [&](std::size_t b) { out.emplace_back(a, b); });
    return out;
  }

  // Same boundaries up to polarity and identical incidence.
  friend bool operator==(const FinRel& r, const FinRel& s) {
    return r.rows_ == s.rows_ && r.cols_ == s.cols_ && r.bits_ == s.bits_ && r.src_.same_carrier(s.src_) &&
           r.dst_.same_carrier(s.dst_);
  }

  const std::vector<word_t>& raw() const { return bits_; }
  std::vector<word_t>& raw() { return bits_; }

  // Re-label the boundaries without touching incidence (used for polarity bookkeeping).
  FinRel with_boundaries(Obj src, Obj dst) const {
    if (src.cardinality() != rows_ || dst.cardinality() != cols_) throw ShapeError("retyping changes cardinality");
    FinRel out = *this;
    out.src_ = std::move(src);
    out.dst_ = std::move(dst);
    return out;
  }

 private:
  Obj src_, dst_;
  std::size_t rows_, cols_, words_;
  std::vector<word_t> bits_;
};

inline void require_shape(bool ok, const std::string& what, const Obj& a, const Obj& b) {
  if (!ok) throw ShapeError(what + ": boundary mismatch between " + a.to_string() + " and " + b.to_string());
}

inline FinRel zero(const Obj& a, const Obj& b) { return FinRel(a, b); }

inline FinRel identity(const Obj& a) {
  FinRel r(a, a);
  for (std::size_t i = 0; i < r.rows(); ++i) r.set(i, i);
  return r;
}

template <class Pred>
FinRel from_predicate(const Obj& a, const Obj& b, Pred&& p) {
  FinRel r(a, b);
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (p(i, j)) r.set(i, j);
  return r;
}

// Diagrammatic order: first r, then s. Returns s∘r.
inline FinRel compose(const FinRel& r, const FinRel& s) {
  require_shape(r.dst().same_carrier(s.src()), "compose", r.dst(), s.src());
  FinRel out(r.src(), s.dst());
  const std::size_t w = s.words_per_row();
  for (std::size_t a = 0; a < r.rows(); ++a) {
    auto dst = out.row(a);
    r.for_each_in_row(a, [&](std::size_t b) {
      auto src = s.row(b);
      for (std::size_t k = 0; k < w; ++k) dst[k] |= src[k];
    });
  }
  return out;
}

inline FinRel dagger(const FinRel& r) {
  FinRel out(r.dst(), r.src());
  for (std::size_t a = 0; a < r.rows(); ++a) r.for_each_in_row(a, [&](std::size_t b) { out.set(b, a); });
  return out;
}

inline FinRel tensor(const FinRel& r, const FinRel& s) {
  FinRel out(r.src() * s.src(), r.dst() * s.dst());
  const std::size_t sr = s.rows(), sc = s.cols();
  for (std::size_t a = 0; a < r.rows(); ++a)
    r.for_each_in_row(a, [&](std::size_t b) {
      for (std::size_t c = 0; c < sr; ++c) s.for_each_in_row(c, [&](std::size_t d) { out.set(a * sr + c, b * sc + d); });
    });
  return out;
}

inline FinRel union_of(const FinRel& r, const FinRel& s) {
  require_shape(r.src().same_carrier(s.src()) && r.dst().same_carrier(s.dst()), "union", r.src(), s.src());
  FinRel out = r;
  auto& o = out.raw();
  const auto& t = s.raw();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] |= t[i];
  return out;
}

inline FinRel intersection(const FinRel& r, const FinRel& s) {
  require_shape(r.src().same_carrier(s.src()) && r.dst().same_carrier(s.dst()), "intersection", r.src(), s.src());
  FinRel out = r;
  auto& o = out.raw();
  const auto& t = s.raw();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] &= t[i];
  return out;
}

inline bool is_leq(const FinRel& r, const FinRel& s) {
  require_shape(r.src().same_carrier(s.src()) && r.dst().same_carrier(s.dst()), "is_leq", r.src(), s.src());
  const auto& a = r.raw();
  const auto& b = s.raw();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

// Re-indexing bijection sending factor perm[k] of `a` to position k of the output.
inline FinRel permutation(const Obj& a, const std::vector<std::size_t>& perm) {
  if (perm.size() != a.arity()) throw ShapeError("permutation arity mismatch for " + a.to_string());
  std::vector<Factor> f;
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) throw ShapeError("not a permutation");
    seen[p] = true;
    f.push_back(a.factors()[p]);
  }
  Obj b(std::move(f));
  FinRel out(a, b);
  std::vector<std::size_t> digits, moved(perm.size());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    digits = a.decode(i);
    for (std::size_t k = 0; k < perm.size(); ++k) moved[k] = digits[perm[k]];
    out.set(i, b.encode(moved));
  }
  return out;
}

// Symmetry X⊗Y → Y⊗X.
inline FinRel swap(const Obj& x, const Obj& y) {
  std::vector<std::size_t> perm;
  for (std::size_t k = 0; k < y.arity(); ++k) perm.push_back(x.arity() + k);
  for (std::size_t k = 0; k < x.arity(); ++k) perm.push_back(k);
  return permutation(x * y, perm);
}

inline FinRel diagonal_state(const Obj& pair) {
  FinRel r(Obj::unit(), pair);
  const std::size_t n = pair.factors()[0].set.size;
  for (std::size_t a = 0; a < n; ++a) r.set(0, a * n + a);
  return r;
}

// cup: I → A*⊗A, cup_swapped: I → A⊗A*, cap: A⊗A* → I, cap_swapped: A*⊗A → I.
inline FinRel cup(const FinSet& a) { return diagonal_state(Obj({{a, Polarity::minus}, {a, Polarity::plus}})); }
inline FinRel cup_swapped(const FinSet& a) { return diagonal_state(Obj({{a, Polarity::plus}, {a, Polarity::minus}})); }
inline FinRel cap(const FinSet& a) {
  return compose(swap(Obj(a, Polarity::plus), Obj(a, Polarity::minus)), dagger(cup(a)));
}
inline FinRel cap_swapped(const FinSet& a) {
  return compose(swap(Obj(a, Polarity::minus), Obj(a, Polarity::plus)), dagger(cup_swapped(a)));
}

struct Biproduct {
  Obj sum;
  std::vector<FinRel> injections;
};

inline Biproduct biproduct(const std::vector<Obj>& objs) {
  if (objs.size() == 1) return {objs[0], {identity(objs[0])}};
  std::size_t total = 0;
  std::string name;
  for (const auto& o : objs) {
    total += o.cardinality();
    if (!name.empty()) name += "+";
    name += o.is_unit() ? "I" : (o.arity() == 1 ? o.factors()[0].set.name : "(" + o.to_string() + ")");
  }
  Obj sum(FinSet(name.empty() ? "0" : name, total));
  Biproduct out{sum, {}};
  std::size_t offset = 0;
  for (const auto& o : objs) {
    FinRel k(o, sum);
    for (std::size_t i = 0; i < o.cardinality(); ++i) k.set(i, offset + i);
    offset += o.cardinality();
    out.injections.push_back(std::move(k));
  }
  return out;
}

struct RelationProperties {
  std::optional<bool> reflexive, symmetric, transitive, equivalence;
  bool single_valued = false, total = false, difunctional = false;
};

inline bool is_endo(const FinRel& r) { return r.src().same_carrier(r.dst()); }

inline bool is_single_valued(const FinRel& r) {
  for (std::size_t a = 0; a < r.rows(); ++a) {
    std::size_t n = 0;
    for (auto w : r.row(a)) n += static_cast<std::size_t>(std::popcount(w));
    if (n > 1) return false;
  }
  return true;
}

inline bool is_total(const FinRel& r) {
  for (std::size_t a = 0; a < r.rows(); ++a)
    if (r.row_empty(a)) return false;
  return true;
}

inline bool is_map(const FinRel& r) { return is_single_valued(r) && is_total(r); }

inline bool is_difunctional(const FinRel& r) { return is_leq(compose(compose(r, dagger(r)), r), r); }

inline bool is_reflexive(const FinRel& r) {
  require_shape(is_endo(r), "reflexive", r.src(), r.dst());
  for (std::size_t a = 0; a < r.rows(); ++a)
    if (!r(a, a)) return false;
  return true;
}

inline bool is_symmetric(const FinRel& r) {
  require_shape(is_endo(r), "symmetric", r.src(), r.dst());
  return r.raw() == dagger(r).raw();
}

inline bool is_transitive(const FinRel& r) {
  require_shape(is_endo(r), "transitive", r.src(), r.dst());
  return is_leq(compose(r, r), r);
}

inline bool is_equivalence(const FinRel& r) { return is_reflexive(r) && is_symmetric(r) && is_transitive(r); }

// Endo-only flags are filled in when `endo_flags` is set; this requires src = dst.
inline RelationProperties relation_properties(const FinRel& r, bool endo_flags = true) {
  RelationProperties p;
  if (endo_flags) {
    if (!is_endo(r))
      throw ShapeError("relation_properties: endo flags requested for " + r.src().to_string() + " -> " +
                       r.dst().to_string());
    p.reflexive = is_reflexive(r);
    p.symmetric = is_symmetric(r);
    p.transitive = is_transitive(r);
    p.equivalence = *p.reflexive && *p.symmetric && *p.transitive;
  }
  p.single_valued = is_single_valued(r);
  p.total = is_total(r);
  p.difunctional = is_difunctional(r);
  return p;
}

inline bool goursat_chain_check(const FinRel& r, const FinRel& s) {
  require_shape(is_endo(r) && r.src().same_carrier(s.src()) && is_endo(s), "goursat_chain_check", r.src(), s.src());
  if (!is_equivalence(r) || !is_equivalence(s)) throw PreconditionError("goursat_chain_check: inputs must be equivalence relations");
  return compose(compose(s, r), s) == compose(compose(r, s), r);
}

struct DaggerSplit {
  FinSet classes;
  FinRel inclusion;  // classes ⇸ A; compose(inclusion, dagger(inclusion)) = id, compose(dagger(inclusion), inclusion) = p
  std::vector<std::vector<std::size_t>> members;
};

inline DaggerSplit dagger_split(const FinRel& p, const std::string& name = "L") {
  require_shape(is_endo(p), "dagger_split", p.src(), p.dst());
  if (!is_symmetric(p) || !is_transitive(p)) throw PreconditionError("dagger_split: relation must be symmetric and transitive");
  std::vector<std::vector<std::size_t>> members;
  std::vector<bool> placed(p.rows(), false);
  for (std::size_t a = 0; a < p.rows(); ++a) {
    if (placed[a] || !p(a, a)) continue;
    auto cls = p.image(a);
    for (auto b : cls) placed[b] = true;
    members.push_back(std::move(cls));
  }
  FinSet l(name, members.size());
  FinRel inc(Obj(l), p.src());
  for (std::size_t c = 0; c < members.size(); ++c)
    for (auto a : members[c]) inc.set(c, a);
  return {l, std::move(inc), std::move(members)};
}

struct ImageFactorization {
  FinSet image;
  FinRel epi;   // A ⇸ image, a surjective map
  FinRel mono;  // image ⇸ B, an injective map
};

// Regular epi / mono factorization of a map; compose(epi, mono) = f.
inline ImageFactorization image_factorization(const FinRel& f, const std::string& name = "Im") {
  if (!is_map(f)) throw PreconditionError("image_factorization: relation is not a map");
  std::vector<std::size_t> index(f.cols(), SIZE_MAX), elems;
  for (std::size_t a = 0; a < f.rows(); ++a) {
    std::size_t b = f.image(a).front();
    if (index[b] == SIZE_MAX) {
      index[b] = elems.size();
      elems.push_back(b);
    }
  }
  std::sort(elems.begin(), elems.end());
  for (std::size_t k = 0; k < elems.size(); ++k) index[elems[k]] = k;
  FinSet im(name, elems.size());
  FinRel e(f.src(), Obj(im)), m(Obj(im), f.dst());
  for (std::size_t a = 0; a < f.rows(); ++a) e.set(a, index[f.image(a).front()]);
  for (std::size_t k = 0; k < elems.size(); ++k) m.set(k, elems[k]);
  return {im, std::move(e), std::move(m)};
}

}  // namespace frobrel
