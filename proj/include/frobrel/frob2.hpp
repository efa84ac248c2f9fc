#pragma once

// Binary Frobenius structures in finite relations and the groupoids they encode.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "frobrel/finrel.hpp"

namespace frobrel {

// Carrier A with multiplication M: A⊗A ⇸ A and unit U ⊆ A.
// M(a,b,c) reads "c is a composite of a after b".
struct Frob2 {
  FinSet carrier;
  FinRel mult;
  std::vector<bool> unit;

  Frob2() = default;
  explicit Frob2(FinSet a)
      : carrier(a), mult(Obj(a) * Obj(a), Obj(a)), unit(a.size, false) {}
  Frob2(FinSet a, FinRel m, std::vector<bool> u) : carrier(std::move(a)), mult(std::move(m)), unit(std::move(u)) {
    if (!mult.src().same_carrier(Obj(carrier) * Obj(carrier)) || !mult.dst().same_carrier(Obj(carrier)) ||
        unit.size() != carrier.size)
      throw ShapeError("Frob2: multiplication or unit has the wrong shape for carrier " + carrier.name);
  }

  std::size_t size() const { return carrier.size; }
  bool m(std::size_t a, std::size_t b, std::size_t c) const { return mult(a * carrier.size + b, c); }
  void set_m(std::size_t a, std::size_t b, std::size_t c, bool v = true) { mult.set(a * carrier.size + b, c, v); }
  bool defined(std::size_t a, std::size_t b) const { return !mult.row_empty(a * carrier.size + b); }

  FinRel unit_state() const {
    FinRel r(Obj::unit(), Obj(carrier));
    for (std::size_t a = 0; a < size(); ++a)
      if (unit[a]) r.set(0, a);
    return r;
  }

  friend bool operator==(const Frob2& x, const Frob2& y) {
    return x.carrier == y.carrier && x.mult == y.mult && x.unit == y.unit;
  }
};

struct Frob2Report {
  bool F1_unit_left = false, F2_unit_right = false, F3_assoc = false, F4_special = false, F5_frobenius = false;
  bool all() const { return F1_unit_left && F2_unit_right && F3_assoc && F4_special && F5_frobenius; }
  static std::vector<std::string> names() { return {"F1_unit_left", "F2_unit_right", "F3_assoc", "F4_special", "F5_frobenius"}; }
  std::vector<bool> flags() const { return {F1_unit_left, F2_unit_right, F3_assoc, F4_special, F5_frobenius}; }
};

namespace detail {

inline bool frob2_unit_law(const Frob2& f, bool left) {
  const std::size_t n = f.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t a2 = 0; a2 < n; ++a2) {
      bool ex = false;
      for (std::size_t x = 0; x < n && !ex; ++x)
        if (f.unit[x]) ex = left ? f.m(x, a, a2) : f.m(a, x, a2);
      if (ex != (a == a2)) return false;
    }
  return true;
}

}  // namespace detail

inline bool check_F1(const Frob2& f) { return detail::frob2_unit_law(f, true); }
inline bool check_F2(const Frob2& f) { return detail::frob2_unit_law(f, false); }

inline bool check_F3(const Frob2& f) {
  const std::size_t n = f.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          bool lhs = false, rhs = false;
          for (std::size_t e = 0; e < n; ++e) {
            lhs = lhs || (f.m(a, b, e) && f.m(e, c, d));
            rhs = rhs || (f.m(b, c, e) && f.m(a, e, d));
          }
          if (lhs != rhs) return false;
        }
  return true;
}

inline bool check_F4(const Frob2& f) {
  const std::size_t n = f.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t a2 = 0; a2 < n; ++a2) {
      bool ex = false;
      for (std::size_t bc = 0; bc < n * n && !ex; ++bc) ex = f.mult(bc, a) && f.mult(bc, a2);
      if (ex != (a == a2)) return false;
    }
  return true;
}

inline bool check_F5(const Frob2& f) {
  const std::size_t n = f.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          bool lhs = false, rhs = false;
          for (std::size_t e = 0; e < n; ++e) {
            lhs = lhs || (f.m(a, e, c) && f.m(e, d, b));
            rhs = rhs || (f.m(c, e, a) && f.m(e, b, d));
          }
          if (lhs != rhs) return false;
        }
  return true;
}

inline Frob2Report check_frob2(const Frob2& f) {
  return {check_F1(f), check_F2(f), check_F3(f), check_F4(f), check_F5(f)};
}

// Arrows are indices of `arrows`; compose(a,b) is "a after b", defined iff source(a) = target(b).
struct Groupoid {
  FinSet objects;
  FinSet arrows;
  std::vector<std::size_t> source, target, unit, inverse;
  std::vector<std::optional<std::size_t>> comp;

  Groupoid() = default;
  Groupoid(FinSet obj, FinSet arr)
      : objects(std::move(obj)),
        arrows(std::move(arr)),
        source(arrows.size, 0),
        target(arrows.size, 0),
        unit(objects.size, 0),
        inverse(arrows.size, 0),
        comp(arrows.size * arrows.size) {}

  std::size_t num_objects() const { return objects.size; }
  std::size_t num_arrows() const { return arrows.size; }
  std::optional<std::size_t> compose(std::size_t a, std::size_t b) const { return comp[a * arrows.size + b]; }
  void set_compose(std::size_t a, std::size_t b, std::optional<std::size_t> c) { comp[a * arrows.size + b] = c; }

  // Numeric content only; names are presentation.
  friend bool operator==(const Groupoid& x, const Groupoid& y) {
    return x.objects.size == y.objects.size && x.arrows.size == y.arrows.size && x.source == y.source &&
           x.target == y.target && x.unit == y.unit && x.inverse == y.inverse && x.comp == y.comp;
  }
};

struct GroupoidReport {
  bool well_formed = false;
  bool unit_endpoints = false;
  bool composition_domain = false;
  bool composite_endpoints = false;
  bool unit_laws = false;
  bool associativity = false;
  bool inverse_laws = false;
  bool all() const {
    return well_formed && unit_endpoints && composition_domain && composite_endpoints && unit_laws && associativity &&
           inverse_laws;
  }
  static std::vector<std::string> names() {
    return {"well_formed", "unit_endpoints", "composition_domain", "composite_endpoints", "unit_laws", "associativity", "inverse_laws"};
  }
  std::vector<bool> flags() const {
    return {well_formed, unit_endpoints, composition_domain, composite_endpoints, unit_laws, associativity, inverse_laws};
  }
};

inline GroupoidReport check_groupoid(const Groupoid& g) {
  GroupoidReport r;
  const std::size_t n = g.num_arrows(), k = g.num_objects();
  auto in_range = [](const std::vector<std::size_t>& v, std::size_t len, std::size_t bound) {
    return v.size() == len && std::all_of(v.begin(), v.end(), [&](std::size_t x) { return x < bound; });
  };
  r.well_formed = in_range(g.source, n, k) && in_range(g.target, n, k) && in_range(g.unit, k, n) &&
                  in_range(g.inverse, n, n) && g.comp.size() == n * n &&
                  std::all_of(g.comp.begin(), g.comp.end(), [&](const auto& c) { return !c || *c < n; });
  if (!r.well_formed) return r;

  r.unit_endpoints = true;
  for (std::size_t x = 0; x < k; ++x)
    r.unit_endpoints = r.unit_endpoints && g.source[g.unit[x]] == x && g.target[g.unit[x]] == x;

  r.composition_domain = true;
  r.composite_endpoints = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto c = g.compose(a, b);
      if (c.has_value() != (g.source[a] == g.target[b])) r.composition_domain = false;
      if (c && (g.source[*c] != g.source[b] || g.target[*c] != g.target[a])) r.composite_endpoints = false;
    }

  r.unit_laws = r.unit_endpoints;
  for (std::size_t a = 0; a < n && r.unit_laws; ++a)
    r.unit_laws = g.compose(a, g.unit[g.source[a]]) == a && g.compose(g.unit[g.target[a]], a) == a;

  r.associativity = true;
  for (std::size_t a = 0; a < n && r.associativity; ++a)
    for (std::size_t b = 0; b < n && r.associativity; ++b) {
      auto ab = g.compose(a, b);
      if (!ab) continue;
      for (std::size_t c = 0; c < n; ++c) {
        auto bc = g.compose(b, c);
        if (!bc) continue;
        auto lhs = g.compose(*ab, c);
        auto rhs = g.compose(a, *bc);
        if (lhs != rhs || !lhs) {
          r.associativity = false;
          break;
        }
      }
    }

  r.inverse_laws = true;
  for (std::size_t a = 0; a < n && r.inverse_laws; ++a) {
    std::size_t i = g.inverse[a];
    r.inverse_laws = g.source[i] == g.target[a] && g.target[i] == g.source[a] &&
                     g.compose(a, i) == g.unit[g.target[a]] && g.compose(i, a) == g.unit[g.source[a]];
  }
  return r;
}

// {(a,b) | ∃x,y∈U M(a,b,x) ∧ M(b,a,y)}
inline FinRel inverse_relation(const Frob2& f) {
  const std::size_t n = f.size();
  auto lands_in_unit = [&](std::size_t a, std::size_t b) {
    for (std::size_t x = 0; x < n; ++x)
      if (f.unit[x] && f.m(a, b, x)) return true;
    return false;
  };
  return from_predicate(Obj(f.carrier), Obj(f.carrier),
                        [&](std::size_t a, std::size_t b) { return lands_in_unit(a, b) && lands_in_unit(b, a); });
}

// {(a,b) | ∃x∈U M(a,b,x)}
inline FinRel involution(const Frob2& f) {
  const std::size_t n = f.size();
  return from_predicate(Obj(f.carrier), Obj(f.carrier), [&](std::size_t a, std::size_t b) {
    for (std::size_t x = 0; x < n; ++x)
      if (f.unit[x] && f.m(a, b, x)) return true;
    return false;
  });
}

inline bool is_symmetric(const Frob2& f) { return is_symmetric(involution(f)); }

namespace detail {

inline std::string failed_flags(const Frob2Report& r) {
  std::string s;
  auto names = Frob2Report::names();
  auto flags = r.flags();
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (!flags[i]) s += (s.empty() ? "" : ", ") + names[i];
  return s;
}

inline std::string failed_flags(const GroupoidReport& r) {
  std::string s;
  auto names = GroupoidReport::names();
  auto flags = r.flags();
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (!flags[i]) s += (s.empty() ? "" : ", ") + names[i];
  return s;
}

inline void require_frob2(const Frob2& f, const std::string& op) {
  auto r = check_frob2(f);
  if (!r.all()) throw PreconditionError(op + ": structure fails " + failed_flags(r));
}

}  // namespace detail

inline Groupoid frob2_to_groupoid(const Frob2& f) {
  detail::require_frob2(f, "frob2_to_groupoid");
  const std::size_t n = f.size();
  std::vector<std::size_t> units, object_of(n, SIZE_MAX);
  for (std::size_t x = 0; x < n; ++x)
    if (f.unit[x]) {
      object_of[x] = units.size();
      units.push_back(x);
    }
  std::vector<std::string> labels;
  if (!f.carrier.labels.empty())
    for (auto x : units) labels.push_back(f.carrier.labels[x]);
  FinSet objs = labels.empty() ? FinSet(f.carrier.name + "0", units.size()) : FinSet(f.carrier.name + "0", labels);
  Groupoid g(objs, f.carrier);

  auto unique_unit = [&](std::size_t a, bool right) {
    std::optional<std::size_t> found;
    for (auto x : units) {
      if (!(right ? f.defined(a, x) : f.defined(x, a))) continue;
      if (found) throw PreconditionError("frob2_to_groupoid: endpoint of element " + f.carrier.label(a) + " is not unique");
      found = x;
    }
    if (!found) throw PreconditionError("frob2_to_groupoid: element " + f.carrier.label(a) + " has no endpoint");
    return object_of[*found];
  };
  for (std::size_t a = 0; a < n; ++a) {
    g.source[a] = unique_unit(a, true);
    g.target[a] = unique_unit(a, false);
  }
  for (std::size_t k = 0; k < units.size(); ++k) g.unit[k] = units[k];

  auto inv = inverse_relation(f);
  for (std::size_t a = 0; a < n; ++a) {
    auto im = inv.image(a);
    if (im.size() != 1) throw PreconditionError("frob2_to_groupoid: inverse of " + f.carrier.label(a) + " is not unique");
    g.inverse[a] = im[0];
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto im = f.mult.image(a * n + b);
      if (im.size() > 1) throw PreconditionError("frob2_to_groupoid: multiplication is not single-valued");
      if (!im.empty()) g.set_compose(a, b, im[0]);
    }
  return g;
}

inline Frob2 groupoid_to_frob2(const Groupoid& g) {
  auto rep = check_groupoid(g);
  if (!rep.all()) throw PreconditionError("groupoid_to_frob2: groupoid fails " + detail::failed_flags(rep));
  Frob2 f(g.arrows);
  const std::size_t n = g.num_arrows();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (auto c = g.compose(a, b); c && g.source[a] == g.target[b]) f.set_m(a, b, *c);
  for (auto u : g.unit) f.unit[u] = true;
  return f;
}

struct CpReport {
  FinRel c_of_f;
  bool is_cp = false;
  std::optional<FinRel> witness_g;  // A ⇸ X with compose(g, dagger(g)) = c_of_f
};

// Factorization criterion: C = g†∘g for some g iff C is symmetric and C(a,b) ⇒ C(a,a).
// The witness has one codomain element per edge {a,b} of C (loops included).
inline CpReport cp_from_relation(const FinRel& c) {
  CpReport rep{c, false, std::nullopt};
  const std::size_t n = c.rows();
  bool ok = is_symmetric(c);
  for (std::size_t a = 0; a < n && ok; ++a)
    if (!c.row_empty(a) && !c(a, a)) ok = false;
  rep.is_cp = ok;
  if (!ok) return rep;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      if (c(a, b)) edges.emplace_back(a, b);
  FinSet x("X", edges.size());
  FinRel g(c.src(), Obj(x));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    g.set(edges[e].first, e);
    g.set(edges[e].second, e);
  }
  rep.witness_g = std::move(g);
  return rep;
}

// C(R) = {(a,b) | b⁻¹∘a defined and in R}, evaluated through the inverse relation and M.
inline CpReport cp_state(const std::vector<bool>& subset, const Frob2& f) {
  if (subset.size() != f.size()) throw ShapeError("cp_state: subset size does not match carrier " + f.carrier.name);
  const std::size_t n = f.size();
  auto inv = inverse_relation(f);
  FinRel c(Obj(f.carrier), Obj(f.carrier));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      bool hit = false;
      inv.for_each_in_row(b, [&](std::size_t bi) {
        f.mult.for_each_in_row(bi * n + a, [&](std::size_t r) { hit = hit || subset[r]; });
      });
      if (hit) c.set(a, b);
    }
  return cp_from_relation(c);
}

inline Frob2 frob2_opposite(const Frob2& f) {
  Frob2 out(f.carrier);
  out.unit = f.unit;
  const std::size_t n = f.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) f.mult.for_each_in_row(a * n + b, [&](std::size_t c) { out.set_m(b, a, c); });
  return out;
}

inline Frob2 frob2_product(const Frob2& x, const Frob2& y) {
  const std::size_t n = x.size(), k = y.size();
  Frob2 out(FinSet(x.carrier.name + "x" + y.carrier.name, n * k));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < k; ++b) out.unit[a * k + b] = x.unit[a] && y.unit[b];
  for (std::size_t a1 = 0; a1 < n; ++a1)
    for (std::size_t a2 = 0; a2 < n; ++a2)
      x.mult.for_each_in_row(a1 * n + a2, [&](std::size_t a3) {
        for (std::size_t b1 = 0; b1 < k; ++b1)
          for (std::size_t b2 = 0; b2 < k; ++b2)
            y.mult.for_each_in_row(b1 * k + b2, [&](std::size_t b3) { out.set_m(a1 * k + b1, a2 * k + b2, a3 * k + b3); });
      });
  return out;
}

// Transposes r: B ⇸ A to a subset of the product structure B^op × A.
inline std::vector<bool> transpose_to_state(const FinRel& r) {
  std::vector<bool> s(r.rows() * r.cols(), false);
  for (auto [b, a] : r.pairs()) s[b * r.cols() + a] = true;
  return s;
}

inline CpReport cp_rel(const FinRel& r, const Frob2& src, const Frob2& dst) {
  if (!r.src().same_carrier(Obj(src.carrier)) || !r.dst().same_carrier(Obj(dst.carrier)))
    throw ShapeError("cp_rel: relation boundaries do not match the structures");
  return cp_state(transpose_to_state(r), frob2_product(frob2_opposite(src), dst));
}

// Closure of a subset under units of its elements, inverses and composition.
inline bool is_closed_subset(const std::vector<bool>& s, const Frob2& f) {
  const std::size_t n = f.size();
  auto inv = inverse_relation(f);
  for (std::size_t a = 0; a < n; ++a) {
    if (!s[a]) continue;
    for (std::size_t x = 0; x < n; ++x)
      if (f.unit[x] && (f.defined(a, x) || f.defined(x, a)) && !s[x]) return false;
    for (auto b : inv.image(a))
      if (!s[b]) return false;
    for (std::size_t b = 0; b < n; ++b) {
      if (!s[b]) continue;
      for (auto c : f.mult.image(a * n + b))
        if (!s[c]) return false;
    }
  }
  return true;
}

inline bool is_subgroupoid(const FinRel& r, const Frob2& src, const Frob2& dst) {
  if (!r.src().same_carrier(Obj(src.carrier)) || !r.dst().same_carrier(Obj(dst.carrier)))
    throw ShapeError("is_subgroupoid: relation boundaries do not match the structures");
  return is_closed_subset(transpose_to_state(r), frob2_product(frob2_opposite(src), dst));
}

inline bool frob2_morphism_check(const FinRel& f, const Frob2& src, const Frob2& dst, bool unital) {
  if (!f.src().same_carrier(Obj(src.carrier)) || !f.dst().same_carrier(Obj(dst.carrier)))
    throw ShapeError("frob2_morphism_check: relation boundaries do not match the structures");
  if (!(compose(src.mult, f) == compose(tensor(f, f), dst.mult))) return false;
  if (!(compose(f, involution(dst)) == compose(involution(src), f))) return false;
  if (unital && !(compose(src.unit_state(), f) == dst.unit_state())) return false;
  return true;
}

// Pair-of-pants structure on X⊗X: (a,b)·(b,d) = (a,d), units the diagonal.
inline Frob2 pants(const FinSet& x) {
  const std::size_t n = x.size;
  Frob2 f(FinSet(x.name + "^2", n * n));
  for (std::size_t a = 0; a < n; ++a) {
    f.unit[a * n + a] = true;
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d) f.set_m(a * n + b, b * n + d, a * n + d);
  }
  return f;
}

// Isometry c ↦ {(a,b) | a⁻¹∘b = c} into the pants structure on the carrier.
inline FinRel representability(const Frob2& f) {
  detail::require_frob2(f, "representability");
  if (!is_symmetric(f)) throw PreconditionError("representability: structure is not symmetric");
  const std::size_t n = f.size();
  auto inv = involution(f);
  FinSet sq = pants(f.carrier).carrier;
  FinRel i(Obj(f.carrier), Obj(sq));
  for (std::size_t a = 0; a < n; ++a)
    inv.for_each_in_row(a, [&](std::size_t ai) {
      for (std::size_t b = 0; b < n; ++b) f.mult.for_each_in_row(ai * n + b, [&](std::size_t c) { i.set(c, a * n + b); });
    });
  return i;
}

// Bijections p of carriers with M'(p a, p b, p c) ⟺ M(a,b,c) and U' = p(U).
inline std::optional<std::vector<std::size_t>> find_frob2_isomorphism(const Frob2& x, const Frob2& y) {
  const std::size_t n = x.size();
  if (y.size() != n || x.mult.count() != y.mult.count()) return std::nullopt;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = x.unit[a] == y.unit[p[a]];
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        for (std::size_t c = 0; c < n && ok; ++c) ok = x.m(a, b, c) == y.m(p[a], p[b], p[c]);
    if (ok) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

namespace examples {

inline Frob2 cyclic_group(std::size_t n, const std::string& name = "") {
  Frob2 f(FinSet(name.empty() ? "Z" + std::to_string(n) : name, n));
  f.unit[0] = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) f.set_m(a, b, (a + b) % n);
  return f;
}

inline Frob2 discrete(std::size_t n, const std::string& name = "") {
  Frob2 f(FinSet(name.empty() ? "D" + std::to_string(n) : name, n));
  for (std::size_t a = 0; a < n; ++a) {
    f.unit[a] = true;
    f.set_m(a, a, a);
  }
  return f;
}

// Group from a multiplication table mult[a][b] = a·b; identity is the element e.
inline Frob2 group_from_table(const std::vector<std::vector<std::size_t>>& mult, std::size_t e, const std::string& name) {
  Frob2 f(FinSet(name, mult.size()));
  f.unit[e] = true;
  for (std::size_t a = 0; a < mult.size(); ++a)
    for (std::size_t b = 0; b < mult.size(); ++b) f.set_m(a, b, mult[a][b]);
  return f;
}

// Symmetric group on three letters, elements in lexicographic order of permutations.
inline Frob2 s3() {
  std::vector<std::array<std::size_t, 3>> perms;
  std::array<std::size_t, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<std::size_t, 3> c{};
      for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return group_from_table(table, 0, "S3");
}

// Pair groupoid on n objects: one arrow (a,b): b → a for every pair.
inline Groupoid indiscrete_groupoid(std::size_t n, const std::string& name = "X") {
  Groupoid g(FinSet(name, n), FinSet(name + "^2", n * n));
  for (std::size_t a = 0; a < n; ++a) {
    g.unit[a] = a * n + a;
    for (std::size_t b = 0; b < n; ++b) {
      g.source[a * n + b] = b;
      g.target[a * n + b] = a;
      g.inverse[a * n + b] = b * n + a;
      for (std::size_t d = 0; d < n; ++d) g.set_compose(a * n + b, b * n + d, a * n + d);
    }
  }
  return g;
}

}  // namespace examples

}  // namespace frobrel
