#pragma once

// Ternary Frobenius structures as quaternary incidences, connectors and
// double equivalence relations.

#include <optional>
#include <string>
#include <vector>

#include "frobrel/frob2.hpp"

namespace frobrel {

// Λ(x,y,z,u) ⟺ u ∈ μ₃(x,y,z), stored as a relation A⊗A*⊗A ⇸ A.
struct Frob3 {
  FinSet carrier;
  FinRel lambda;

  Frob3() = default;
  explicit Frob3(FinSet a) : carrier(a), lambda(input_obj(a), Obj(a)) {}
  Frob3(FinSet a, FinRel l) : carrier(std::move(a)), lambda(std::move(l)) {
    if (!lambda.src().same_carrier(input_obj(carrier)) || !lambda.dst().same_carrier(Obj(carrier)))
      throw ShapeError("Frob3: incidence has the wrong shape for carrier " + carrier.name);
    lambda = lambda.with_boundaries(input_obj(carrier), Obj(carrier));
  }

  static Obj input_obj(const FinSet& a) { return Obj::word(a, {Polarity::plus, Polarity::minus, Polarity::plus}); }

  template <class Pred>
  static Frob3 from_predicate(const FinSet& a, Pred&& p) {
    Frob3 t(a);
    const std::size_t n = a.size;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          for (std::size_t u = 0; u < n; ++u)
            if (p(x, y, z, u)) t.set(x, y, z, u);
    return t;
  }

  std::size_t size() const { return carrier.size; }
  std::size_t row(std::size_t x, std::size_t y, std::size_t z) const { return (x * carrier.size + y) * carrier.size + z; }
  bool at(std::size_t x, std::size_t y, std::size_t z, std::size_t u) const { return lambda(row(x, y, z), u); }
  void set(std::size_t x, std::size_t y, std::size_t z, std::size_t u, bool v = true) { lambda.set(row(x, y, z), u, v); }

  friend bool operator==(const Frob3& a, const Frob3& b) { return a.carrier == b.carrier && a.lambda == b.lambda; }
};

struct Frob3Report {
  bool assoc = false, dagger_symmetric = false, normal = false, left_idempotent = false, right_idempotent = false,
       commutative = false;
  static std::vector<std::string> names() {
    return {"assoc", "dagger_symmetric", "normal", "left_idempotent", "right_idempotent", "commutative"};
  }
  std::vector<bool> flags() const { return {assoc, dagger_symmetric, normal, left_idempotent, right_idempotent, commutative}; }
  // The defining axioms of a dagger Frobenius 3-structure.
  bool frobenius() const { return assoc && dagger_symmetric; }
};

inline bool check_assoc3(const Frob3& t) {
  const std::size_t n = t.size();
  // lhs[x,y,z,u,v] and rhs[...] as rows over s.
  std::vector<FinRel::word_t> lhs(t.lambda.words_per_row()), rhs(t.lambda.words_per_row());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t v = 0; v < n; ++v) {
            std::fill(lhs.begin(), lhs.end(), 0);
            std::fill(rhs.begin(), rhs.end(), 0);
            t.lambda.for_each_in_row(t.row(x, y, z), [&](std::size_t w) {
              auto r = t.lambda.row(t.row(w, u, v));
              for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] |= r[k];
            });
            t.lambda.for_each_in_row(t.row(z, u, v), [&](std::size_t w) {
              auto r = t.lambda.row(t.row(x, y, w));
              for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] |= r[k];
            });
            if (lhs != rhs) return false;
          }
  return true;
}

// Λ(x,y,z,u) ⟺ Λ(u,z,y,x) ⟺ Λ(y,x,u,z)
inline bool check_dagger_symmetric3(const Frob3& t) {
  const std::size_t n = t.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t u = 0; u < n; ++u) {
          bool v = t.at(x, y, z, u);
          if (v != t.at(u, z, y, x) || v != t.at(y, x, u, z)) return false;
        }
  return true;
}

// {(z,u) | ∃y Λ(y,y,z,u)}
inline FinRel left_loop(const Frob3& t) {
  const std::size_t n = t.size();
  FinRel r(Obj(t.carrier), Obj(t.carrier));
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) t.lambda.for_each_in_row(t.row(y, y, z), [&](std::size_t u) { r.set(z, u); });
  return r;
}

// {(x,u) | ∃y Λ(x,y,y,u)}
inline FinRel right_loop(const Frob3& t) {
  const std::size_t n = t.size();
  FinRel r(Obj(t.carrier), Obj(t.carrier));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) t.lambda.for_each_in_row(t.row(x, y, y), [&](std::size_t u) { r.set(x, u); });
  return r;
}

// l((y,z),(x,u)) = Λ(x,y,z,u), an endo-relation on A*⊗A.
inline FinRel l_rel(const Frob3& t) {
  const std::size_t n = t.size();
  Obj o({{t.carrier, Polarity::minus}, {t.carrier, Polarity::plus}});
  FinRel r(o, o);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        t.lambda.for_each_in_row(t.row(x, y, z), [&](std::size_t u) { r.set(y * n + z, x * n + u); });
  return r;
}

// r((x,y),(u,z)) = Λ(x,y,z,u), an endo-relation on A⊗A*.
inline FinRel r_rel(const Frob3& t) {
  const std::size_t n = t.size();
  Obj o({{t.carrier, Polarity::plus}, {t.carrier, Polarity::minus}});
  FinRel r(o, o);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        t.lambda.for_each_in_row(t.row(x, y, z), [&](std::size_t u) { r.set(x * n + y, u * n + z); });
  return r;
}

inline bool check_normal3(const Frob3& t) {
  auto id = identity(Obj(t.carrier));
  return left_loop(t) == id && right_loop(t) == id;
}

inline bool check_commutative3(const Frob3& t) {
  const std::size_t n = t.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = x + 1; z < n; ++z) {
        auto a = t.lambda.row(t.row(x, y, z));
        auto b = t.lambda.row(t.row(z, y, x));
        if (!std::equal(a.begin(), a.end(), b.begin())) return false;
      }
  return true;
}

inline Frob3Report check_frob3(const Frob3& t) {
  Frob3Report r;
  r.assoc = check_assoc3(t);
  r.dagger_symmetric = check_dagger_symmetric3(t);
  r.normal = check_normal3(t);
  auto l = l_rel(t);
  r.left_idempotent = compose(l, l) == l;
  auto rr = r_rel(t);
  r.right_idempotent = compose(rr, rr) == rr;
  r.commutative = check_commutative3(t);
  return r;
}

struct DoubleEqReport {
  FinRel R, S, l, r;
  bool R_S_equivalences = false;    // R and S are equivalence relations on A
  bool l_equivalence_on_S = false;  // l ⊆ S×S and l is an equivalence relation on S
  bool r_equivalence_on_R = false;  // r ⊆ R×R and r is an equivalence relation on R
  bool lambda_supported = false;    // Λ(x,y,z,u) ⇒ R(x,y) ∧ R(z,u) ∧ S(y,z) ∧ S(x,u)
  bool is_double_equivalence() const { return R_S_equivalences && l_equivalence_on_S && r_equivalence_on_R && lambda_supported; }
  static std::vector<std::string> names() {
    return {"R_S_equivalences", "l_equivalence_on_S", "r_equivalence_on_R", "lambda_supported"};
  }
  std::vector<bool> flags() const { return {R_S_equivalences, l_equivalence_on_S, r_equivalence_on_R, lambda_supported}; }
};

namespace detail {

// e is an equivalence relation on the subset marked by `support` and vanishes elsewhere.
inline bool equivalence_on(const FinRel& e, const std::vector<bool>& support) {
  for (std::size_t a = 0; a < e.rows(); ++a) {
    if (support[a] != e(a, a)) return false;
    bool inside = true;
    e.for_each_in_row(a, [&](std::size_t b) { inside = inside && support[a] && support[b]; });
    if (!inside) return false;
  }
  return is_symmetric(e) && is_transitive(e);
}

}  // namespace detail

inline DoubleEqReport double_eq(const Frob3& t) {
  const std::size_t n = t.size();
  Obj a(t.carrier);
  DoubleEqReport d{from_predicate(a, a, [&](std::size_t x, std::size_t y) { return t.at(x, y, y, x); }),
                   from_predicate(a, a, [&](std::size_t y, std::size_t z) { return t.at(y, y, z, z); }),
                   l_rel(t),
                   r_rel(t)};
  d.R_S_equivalences = is_equivalence(d.R) && is_equivalence(d.S);
  std::vector<bool> s_pairs(n * n), r_pairs(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      s_pairs[x * n + y] = d.S(x, y);
      r_pairs[x * n + y] = d.R(x, y);
    }
  d.l_equivalence_on_S = detail::equivalence_on(d.l, s_pairs);
  d.r_equivalence_on_R = detail::equivalence_on(d.r, r_pairs);
  d.lambda_supported = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        t.lambda.for_each_in_row(t.row(x, y, z), [&](std::size_t u) {
          if (!(d.R(x, y) && d.R(z, u) && d.S(y, z) && d.S(x, u))) d.lambda_supported = false;
        });
  return d;
}

// Partial ternary operation p on R ×_A S = {(x,y,z) | R(x,y) ∧ S(y,z)}.
struct Connector {
  FinSet carrier;
  FinRel R_eq, S_eq;
  std::vector<std::optional<std::size_t>> p;  // indexed (x*n + y)*n + z

  Connector() = default;
  explicit Connector(FinSet a)
      : carrier(a), R_eq(Obj(a), Obj(a)), S_eq(Obj(a), Obj(a)), p(a.size * a.size * a.size) {}

  std::size_t size() const { return carrier.size; }
  std::size_t idx(std::size_t x, std::size_t y, std::size_t z) const { return (x * carrier.size + y) * carrier.size + z; }
  std::optional<std::size_t> at(std::size_t x, std::size_t y, std::size_t z) const { return p[idx(x, y, z)]; }
  void set(std::size_t x, std::size_t y, std::size_t z, std::optional<std::size_t> v) { p[idx(x, y, z)] = v; }
  bool in_domain(std::size_t x, std::size_t y, std::size_t z) const { return R_eq(x, y) && S_eq(y, z); }

  friend bool operator==(const Connector& a, const Connector& b) {
    return a.carrier == b.carrier && a.R_eq == b.R_eq && a.S_eq == b.S_eq && a.p == b.p;
  }
};

struct ConnectorReport {
  bool equivalences = false;  // R and S are equivalence relations
  bool domain_exact = false;  // p defined exactly on R ×_A S, values in range
  bool x_S_p = false;
  bool z_R_p = false;
  bool left_unit = false;   // p(x,y,y) = x
  bool right_unit = false;  // p(y,y,z) = z
  bool associativity = false;
  bool all() const { return equivalences && domain_exact && x_S_p && z_R_p && left_unit && right_unit && associativity; }
  static std::vector<std::string> names() {
    return {"equivalences", "domain_exact", "x_S_p", "z_R_p", "left_unit", "right_unit", "associativity"};
  }
  std::vector<bool> flags() const { return {equivalences, domain_exact, x_S_p, z_R_p, left_unit, right_unit, associativity}; }
};

inline ConnectorReport check_connector(const Connector& c) {
  ConnectorReport r;
  const std::size_t n = c.size();
  if (c.p.size() != n * n * n || c.R_eq.rows() != n || c.S_eq.rows() != n) return r;
  r.equivalences = is_equivalence(c.R_eq) && is_equivalence(c.S_eq);
  r.domain_exact = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        auto v = c.at(x, y, z);
        if (v.has_value() != c.in_domain(x, y, z) || (v && *v >= n)) r.domain_exact = false;
      }
  if (!r.domain_exact) return r;
  r.x_S_p = r.z_R_p = r.left_unit = r.right_unit = r.associativity = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        auto v = c.at(x, y, z);
        if (!v) continue;
        r.x_S_p = r.x_S_p && c.S_eq(x, *v);
        r.z_R_p = r.z_R_p && c.R_eq(z, *v);
        if (y == z) r.left_unit = r.left_unit && *v == x;
        if (x == y) r.right_unit = r.right_unit && *v == z;
      }
  for (std::size_t x = 0; x < n && r.associativity; ++x)
    for (std::size_t y = 0; y < n && r.associativity; ++y)
      for (std::size_t z = 0; z < n && r.associativity; ++z)
        for (std::size_t u = 0; u < n && r.associativity; ++u)
          for (std::size_t v = 0; v < n; ++v) {
            std::optional<std::size_t> lhs, rhs;
            if (auto w = c.at(x, y, z)) lhs = c.at(*w, u, v);
            if (auto w = c.at(z, u, v)) rhs = c.at(x, y, *w);
            if (lhs != rhs) {
              r.associativity = false;
              break;
            }
          }
  return r;
}

namespace detail {

inline std::string failed_flags(const std::vector<std::string>& names, const std::vector<bool>& flags) {
  std::string s;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (!flags[i]) s += (s.empty() ? "" : ", ") + names[i];
  return s;
}

}  // namespace detail

inline Connector frob3_to_connector(const Frob3& t) {
  auto rep = check_frob3(t);
  if (!(rep.assoc && rep.dagger_symmetric && rep.normal)) {
    std::vector<bool> need{rep.assoc, rep.dagger_symmetric, rep.normal};
    throw PreconditionError("frob3_to_connector: structure fails " +
                            detail::failed_flags({"assoc", "dagger_symmetric", "normal"}, need));
  }
  const std::size_t n = t.size();
  auto d = double_eq(t);
  Connector c(t.carrier);
  c.R_eq = d.R;
  c.S_eq = d.S;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        auto im = t.lambda.image(t.row(x, y, z));
        if (im.size() > 1) throw PreconditionError("frob3_to_connector: incidence is not single-valued");
        if (im.empty() == c.in_domain(x, y, z))
          throw PreconditionError("frob3_to_connector: domain of the incidence differs from R x_A S");
        if (!im.empty()) c.set(x, y, z, im[0]);
      }
  return c;
}

inline Frob3 connector_to_frob3(const Connector& c) {
  auto rep = check_connector(c);
  if (!rep.all())
    throw PreconditionError("connector_to_frob3: connector fails " + detail::failed_flags(ConnectorReport::names(), rep.flags()));
  Frob3 t(c.carrier);
  const std::size_t n = c.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (auto v = c.at(x, y, z)) t.set(x, y, z, *v);
  return t;
}

// Λ*(x,y,z,u) ⟺ Λ(y,z,u,x): the multiplication with its output bent to the far
// left input and its right leg bent up to the output.
inline Frob3 dual3(const Frob3& t) {
  return Frob3::from_predicate(t.carrier, [&](auto x, auto y, auto z, auto u) { return t.at(y, z, u, x); });
}

inline Frob3 opposite3(const Frob3& t) {
  return Frob3::from_predicate(t.carrier, [&](auto x, auto y, auto z, auto u) { return t.at(z, y, x, u); });
}

// Carrier A×B with (a,b) ↦ a·|B| + b; legs are wired componentwise.
inline Frob3 product3(const Frob3& t1, const Frob3& t2) {
  const std::size_t k = t2.size();
  FinSet c(t1.carrier.name + "x" + t2.carrier.name, t1.size() * k);
  return Frob3::from_predicate(c, [&](auto x, auto y, auto z, auto u) {
    return t1.at(x / k, y / k, z / k, u / k) && t2.at(x % k, y % k, z % k, u % k);
  });
}

// Λ_P((a,b),(c,d),(e,f),(g,h)) ⟺ g=a ∧ h=f ∧ b=d ∧ c=e on A×B.
inline Frob3 pants3(const FinSet& a, const FinSet& b) {
  const std::size_t k = b.size;
  FinSet c(a.name + "x" + b.name, a.size * k);
  return Frob3::from_predicate(c, [&](auto x, auto y, auto z, auto u) {
    return u / k == x / k && u % k == z % k && x % k == y % k && y / k == z / k;
  });
}

// ∃e₁,e₂∈E Λ(x,e₁,e₂,u) ⟺ x=u and ∃e₁,e₂∈E Λ(e₁,e₂,x,u) ⟺ x=u.
inline bool is_unital(const Frob3& t, const std::vector<bool>& e) {
  const std::size_t n = t.size();
  if (e.size() != n) throw ShapeError("is_unital: subset size does not match carrier");
  FinRel right(Obj(t.carrier), Obj(t.carrier)), left(Obj(t.carrier), Obj(t.carrier));
  for (std::size_t e1 = 0; e1 < n; ++e1)
    for (std::size_t e2 = 0; e2 < n; ++e2) {
      if (!e[e1] || !e[e2]) continue;
      for (std::size_t x = 0; x < n; ++x) {
        t.lambda.for_each_in_row(t.row(x, e1, e2), [&](std::size_t u) { right.set(x, u); });
        t.lambda.for_each_in_row(t.row(e1, e2, x), [&](std::size_t u) { left.set(x, u); });
      }
    }
  auto id = identity(Obj(t.carrier));
  return right == id && left == id;
}

// All unit subsets. A pair (e₁,e₂) whose contribution leaves the diagonal can
// never occur inside a unit, which prunes the search.
inline std::vector<std::vector<bool>> unit_candidates(const Frob3& t) {
  const std::size_t n = t.size();
  std::vector<std::vector<bool>> bad(n, std::vector<bool>(n, false));
  for (std::size_t e1 = 0; e1 < n; ++e1)
    for (std::size_t e2 = 0; e2 < n; ++e2)
      for (std::size_t x = 0; x < n; ++x) {
        t.lambda.for_each_in_row(t.row(x, e1, e2), [&](std::size_t u) { bad[e1][e2] = bad[e1][e2] || u != x; });
        t.lambda.for_each_in_row(t.row(e1, e2, x), [&](std::size_t u) { bad[e1][e2] = bad[e1][e2] || u != x; });
      }
  std::vector<std::vector<bool>> out;
  std::vector<bool> cur(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (is_unital(t, cur)) out.push_back(cur);
      return;
    }
    self(self, i + 1);
    if (bad[i][i]) return;
    for (std::size_t j = 0; j < i; ++j)
      if (cur[j] && (bad[i][j] || bad[j][i])) return;
    cur[i] = true;
    self(self, i + 1);
    cur[i] = false;
  };
  rec(rec, 0);
  return out;
}

inline bool frob3_morphism_check(const FinRel& g, const Frob3& src, const Frob3& dst) {
  if (!g.src().same_carrier(Obj(src.carrier)) || !g.dst().same_carrier(Obj(dst.carrier)))
    throw ShapeError("frob3_morphism_check: relation boundaries " + g.src().to_string() + " -> " + g.dst().to_string() +
                     " do not match the structures");
  return compose(src.lambda, g) == compose(tensor(tensor(g, g), g), dst.lambda);
}

inline bool sub3structure_check(const FinRel& i, const Frob3& src, const Frob3& dst) {
  if (!(compose(i, dagger(i)) == identity(Obj(src.carrier)))) return false;
  return frob3_morphism_check(i, src, dst);
}

// Restriction of Λ to a subset, with the inclusion relation.
struct Restriction {
  Frob3 structure;
  FinRel inclusion;
};

inline Restriction restrict3(const Frob3& t, const std::vector<std::size_t>& elems, const std::string& name) {
  std::vector<std::string> labels;
  for (auto e : elems) labels.push_back(t.carrier.label(e));
  FinSet s(name, labels);
  auto sub = Frob3::from_predicate(
      s, [&](auto x, auto y, auto z, auto u) { return t.at(elems[x], elems[y], elems[z], elems[u]); });
  FinRel inc(Obj(s), Obj(t.carrier));
  for (std::size_t k = 0; k < elems.size(); ++k) inc.set(k, elems[k]);
  return {std::move(sub), std::move(inc)};
}

namespace examples {

// u = x·y⁻¹·z for a group given as a Frob2 with a single unit.
inline Frob3 heap_of_group(const Frob2& g) {
  auto inv = involution(g);
  const std::size_t n = g.size();
  Frob3 t(g.carrier);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      inv.for_each_in_row(y, [&](std::size_t yi) {
        g.mult.for_each_in_row(x * n + yi, [&](std::size_t w) {
          for (std::size_t z = 0; z < n; ++z) g.mult.for_each_in_row(w * n + z, [&](std::size_t u) { t.set(x, y, z, u); });
        });
      });
  return t;
}

inline Frob3 cyclic_heap(std::size_t n) {
  return Frob3::from_predicate(FinSet("Z" + std::to_string(n), n),
                               [&](auto x, auto y, auto z, auto u) { return u == (x + n - y + z) % n; });
}

// u = x ∧ y = z
inline Frob3 tproj(std::size_t n) {
  return Frob3::from_predicate(FinSet("A", n), [](auto x, auto y, auto z, auto u) { return u == x && y == z; });
}

// u = z ∧ x = y
inline Frob3 tproj_mirror(std::size_t n) {
  return Frob3::from_predicate(FinSet("A", n), [](auto x, auto y, auto z, auto u) { return u == z && x == y; });
}

inline Frob3 full3(std::size_t n) {
  return Frob3::from_predicate(FinSet("A", n), [](auto, auto, auto, auto) { return true; });
}

inline Connector discrete_connector(std::size_t n) {
  Connector c(FinSet("A", n));
  c.R_eq = identity(Obj(c.carrier));
  c.S_eq = identity(Obj(c.carrier));
  for (std::size_t x = 0; x < n; ++x) c.set(x, x, x, x);
  return c;
}

}  // namespace examples

}  // namespace frobrel
