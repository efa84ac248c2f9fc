#pragma once

// Passing between binary and ternary structures: the unital bridge,
// splitting of l, the enveloping structure and its universal property.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "frobrel/frob3.hpp"

namespace frobrel {

namespace detail {

inline void require_symmetric_frobenius(const Frob2& f, const std::string& op) {
  auto r = check_frob2(f);
  if (!(r.F1_unit_left && r.F2_unit_right && r.F3_assoc && r.F5_frobenius))
    throw PreconditionError(op + ": structure fails " + failed_flags(r));
  if (!is_symmetric(f)) throw PreconditionError(op + ": structure is not symmetric");
}

inline std::vector<std::size_t> subset_indices(const std::vector<bool>& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) out.push_back(i);
  return out;
}

}  // namespace detail

// Λ(x,y,z,u) ⟺ ∃y′,w ι(y,y′) ∧ M(x,y′,w) ∧ M(w,z,u)
inline Frob3 two_to_three(const Frob2& f) {
  detail::require_symmetric_frobenius(f, "two_to_three");
  const std::size_t n = f.size();
  auto inv = involution(f);
  Frob3 t(f.carrier);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      inv.for_each_in_row(y, [&](std::size_t yi) {
        f.mult.for_each_in_row(x * n + yi, [&](std::size_t w) {
          for (std::size_t z = 0; z < n; ++z) f.mult.for_each_in_row(w * n + z, [&](std::size_t u) { t.set(x, y, z, u); });
        });
      });
  return t;
}

// M(a,b,c) ⟺ ∃e∈E Λ(a,e,b,c), U = E
inline Frob2 three_to_two(const Frob3& t, const std::vector<bool>& e) {
  if (!is_unital(t, e)) throw PreconditionError("three_to_two: the given subset is not a unit");
  const std::size_t n = t.size();
  Frob2 f(t.carrier);
  f.unit = e;
  for (auto u : detail::subset_indices(e))
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t.lambda.for_each_in_row(t.row(a, u, b), [&](std::size_t c) { f.set_m(a, b, c); });
  return f;
}

struct SpecialNormalReport {
  bool special = false, normal = false, left_idempotent = false, right_idempotent = false;
  bool agree() const { return special == normal && normal == left_idempotent && left_idempotent == right_idempotent; }
};

inline SpecialNormalReport special_normal_equivalences(const Frob3& t, const std::vector<bool>& e) {
  auto f = three_to_two(t, e);
  auto r = check_frob3(t);
  return {check_F4(f), r.normal, r.left_idempotent, r.right_idempotent};
}

// ------------------------------------------------------------ splitting

struct SplitResult {
  FinSet L;
  FinRel i;  // L ⇸ A*⊗A
  Frob2 two_structure;
  std::vector<std::vector<std::size_t>> members;  // pair indices y·n+z per class
};

// Splits l over its classes; [x,y]·[y,z] = [x,z] on representatives.
inline SplitResult split_construction(const Frob3& t) {
  auto rep = check_frob3(t);
  if (!rep.left_idempotent || !rep.dagger_symmetric)
    throw PreconditionError("split_construction: structure must be left idempotent and dagger symmetric");
  const std::size_t n = t.size();
  auto l = l_rel(t);
  auto ds = dagger_split(l, "L");
  const std::size_t k = ds.members.size();
  std::vector<std::size_t> class_of(n * n, SIZE_MAX);
  for (std::size_t c = 0; c < k; ++c)
    for (auto p : ds.members[c]) class_of[p] = c;

  Frob2 f(ds.classes);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto q1 = class_of[x * n + y];
      if (q1 == SIZE_MAX) continue;
      for (std::size_t z = 0; z < n; ++z) {
        auto q2 = class_of[y * n + z], q3 = class_of[x * n + z];
        if (q2 != SIZE_MAX && q3 != SIZE_MAX) f.set_m(q1, q2, q3);
      }
    }
  for (std::size_t y = 0; y < n; ++y)
    if (auto q = class_of[y * n + y]; q != SIZE_MAX) f.unit[q] = true;
  return {ds.classes, ds.inclusion, std::move(f), ds.members};
}

// i′† ∘ (f ⊗ f) ∘ i
inline FinRel L_on_morphisms(const FinRel& f, const SplitResult& src, const SplitResult& dst) {
  return compose(compose(src.i, tensor(f, f)), dagger(dst.i)).with_boundaries(Obj(src.L), Obj(dst.L));
}

// ------------------------------------------------------------- envelope

struct Envelope {
  enum class Part { Ql, Qr, Aminus, Aplus };

  Frob3 source;
  FinSet E;
  Frob2 structure;
  FinRel kappa;  // A ⇸ E onto the A⁺ block
  std::vector<std::vector<std::size_t>> ql_members, qr_members;  // pair indices per class
  std::size_t nql = 0, nqr = 0, na = 0;

  std::size_t ql(std::size_t c) const { return c; }
  std::size_t qr(std::size_t c) const { return nql + c; }
  std::size_t aminus(std::size_t x) const { return nql + nqr + x; }
  std::size_t aplus(std::size_t x) const { return nql + nqr + na + x; }
  Part part(std::size_t e) const {
    if (e < nql) return Part::Ql;
    if (e < nql + nqr) return Part::Qr;
    if (e < nql + nqr + na) return Part::Aminus;
    return Part::Aplus;
  }
};

inline std::string part_name(Envelope::Part p) {
  switch (p) {
    case Envelope::Part::Ql: return "Ql";
    case Envelope::Part::Qr: return "Qr";
    case Envelope::Part::Aminus: return "A-";
    case Envelope::Part::Aplus: return "A+";
  }
  return "?";
}

namespace detail {

// Class sets computed from each representative choice must coincide.
class RepresentativeTable {
 public:
  void add(std::size_t a, std::size_t b, std::size_t rep_a, std::size_t rep_b, std::set<std::size_t> out) {
    auto& slot = by_pair_[{a, b}];
    slot[{rep_a, rep_b}] = std::move(out);
  }
  template <class Fn>
  void emit(const std::string& what, Fn&& fn) const {
    for (const auto& [pair, reps] : by_pair_) {
      const auto& first = reps.begin()->second;
      for (const auto& [r, s] : reps)
        if (s != first)
          throw Error("envelope: " + what + " entry depends on the choice of representatives (internal error)");
      for (auto c : first) fn(pair.first, pair.second, c);
    }
  }

 private:
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::pair<std::size_t, std::size_t>, std::set<std::size_t>>> by_pair_;
};

}  // namespace detail

inline Envelope envelope(const Frob3& t) {
  auto rep = check_frob3(t);
  if (!rep.normal || !rep.dagger_symmetric || !rep.assoc)
    throw PreconditionError("envelope: structure must be normal, dagger symmetric and associative");
  const std::size_t n = t.size();
  auto ql = dagger_split(l_rel(t), "Ql");
  auto qr = dagger_split(r_rel(t), "Qr");
  Envelope env;
  env.source = t;
  env.na = n;
  env.nql = ql.members.size();
  env.nqr = qr.members.size();
  env.ql_members = ql.members;
  env.qr_members = qr.members;
  std::vector<std::size_t> lcls(n * n, SIZE_MAX), rcls(n * n, SIZE_MAX);
  for (std::size_t c = 0; c < env.nql; ++c)
    for (auto p : ql.members[c]) lcls[p] = c;
  for (std::size_t c = 0; c < env.nqr; ++c)
    for (auto p : qr.members[c]) rcls[p] = c;

  std::vector<std::string> labels;
  auto pair_label = [&](char tag, std::size_t p) {
    return std::string(1, tag) + t.carrier.label(p / n) + "_" + t.carrier.label(p % n);
  };
  for (std::size_t c = 0; c < env.nql; ++c) labels.push_back(pair_label('l', ql.members[c].front()));
  for (std::size_t c = 0; c < env.nqr; ++c) labels.push_back(pair_label('r', qr.members[c].front()));
  for (std::size_t x = 0; x < n; ++x) labels.push_back("m" + t.carrier.label(x));
  for (std::size_t x = 0; x < n; ++x) labels.push_back("p" + t.carrier.label(x));
  env.E = FinSet("E", labels);
  Frob2 f(env.E);

  // Λ-images collected per representative, then checked for independence.
  auto lambda_image = [&](std::size_t x, std::size_t y, std::size_t z) { return t.lambda.image(t.row(x, y, z)); };

  detail::RepresentativeTable ll, rr;
  for (std::size_t c1 = 0; c1 < env.nql; ++c1)
    for (std::size_t c2 = 0; c2 < env.nql; ++c2)
      for (auto p1 : ql.members[c1])
        for (auto p2 : ql.members[c2]) {
          std::size_t b = p1 / n, c = p1 % n, d = p2 / n, e = p2 % n;
          std::set<std::size_t> out;
          for (auto w : lambda_image(c, d, e))
            if (lcls[b * n + w] != SIZE_MAX) out.insert(lcls[b * n + w]);
          ll.add(c1, c2, p1, p2, std::move(out));
        }
  ll.emit("(Ql,Ql)", [&](auto c1, auto c2, auto c3) { f.set_m(env.ql(c1), env.ql(c2), env.ql(c3)); });

  for (std::size_t c1 = 0; c1 < env.nqr; ++c1)
    for (std::size_t c2 = 0; c2 < env.nqr; ++c2)
      for (auto p1 : qr.members[c1])
        for (auto p2 : qr.members[c2]) {
          std::size_t a = p1 / n, b = p1 % n, c = p2 / n, d = p2 % n;
          std::set<std::size_t> out;
          for (auto w : lambda_image(a, b, c))
            if (rcls[w * n + d] != SIZE_MAX) out.insert(rcls[w * n + d]);
          rr.add(c1, c2, p1, p2, std::move(out));
        }
  rr.emit("(Qr,Qr)", [&](auto c1, auto c2, auto c3) { f.set_m(env.qr(c1), env.qr(c2), env.qr(c3)); });

  // Mixed entries: one side is a class, the other a point of A.
  detail::RepresentativeTable pl, rp, lm, mr;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t c = 0; c < env.nql; ++c)
      for (auto p : ql.members[c]) {
        std::size_t y = p / n, z = p % n;
        auto img = lambda_image(x, y, z);
        pl.add(x, c, 0, p, {img.begin(), img.end()});
        auto img2 = lambda_image(x, z, y);
        lm.add(c, x, p, 0, {img2.begin(), img2.end()});
      }
    for (std::size_t c = 0; c < env.nqr; ++c)
      for (auto p : qr.members[c]) {
        std::size_t y = p / n, z = p % n;
        auto img = lambda_image(y, z, x);
        rp.add(c, x, p, 0, {img.begin(), img.end()});
        auto img2 = lambda_image(z, y, x);
        mr.add(x, c, 0, p, {img2.begin(), img2.end()});
      }
  }
  pl.emit("(A+,Ql)", [&](auto x, auto c, auto u) { f.set_m(env.aplus(x), env.ql(c), env.aplus(u)); });
  rp.emit("(Qr,A+)", [&](auto c, auto x, auto u) { f.set_m(env.qr(c), env.aplus(x), env.aplus(u)); });
  lm.emit("(Ql,A-)", [&](auto c, auto x, auto u) { f.set_m(env.ql(c), env.aminus(x), env.aminus(u)); });
  mr.emit("(A-,Qr)", [&](auto x, auto c, auto u) { f.set_m(env.aminus(x), env.qr(c), env.aminus(u)); });

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (auto c = lcls[x * n + y]; c != SIZE_MAX) f.set_m(env.aminus(x), env.aplus(y), env.ql(c));
      if (auto c = rcls[x * n + y]; c != SIZE_MAX) f.set_m(env.aplus(x), env.aminus(y), env.qr(c));
    }

  for (std::size_t y = 0; y < n; ++y) {
    if (auto c = lcls[y * n + y]; c != SIZE_MAX) f.unit[env.ql(c)] = true;
    if (auto c = rcls[y * n + y]; c != SIZE_MAX) f.unit[env.qr(c)] = true;
  }
  env.structure = std::move(f);
  env.kappa = FinRel(Obj(t.carrier), Obj(env.E));
  for (std::size_t x = 0; x < n; ++x) env.kappa.set(x, env.aplus(x));
  return env;
}

struct EnvelopeReport {
  Frob2Report frob2;
  bool symmetric = false;
  bool groupoid = false;
  bool kappa_sub3 = false;
  bool kappa_square_zero = false;
  bool all() const { return frob2.all() && symmetric && groupoid && kappa_sub3 && kappa_square_zero; }
};

inline EnvelopeReport verify_envelope(const Envelope& env) {
  EnvelopeReport r;
  r.frob2 = check_frob2(env.structure);
  r.symmetric = is_symmetric(env.structure);
  if (r.frob2.all()) {
    try {
      r.groupoid = check_groupoid(frob2_to_groupoid(env.structure)).all();
    } catch (const Error&) {
      r.groupoid = false;
    }
  }
  if (r.frob2.F1_unit_left && r.frob2.F2_unit_right && r.frob2.F3_assoc && r.frob2.F5_frobenius && r.symmetric)
    r.kappa_sub3 = sub3structure_check(env.kappa, env.source, two_to_three(env.structure));
  r.kappa_square_zero = compose(tensor(env.kappa, env.kappa), env.structure.mult).count() == 0;
  return r;
}

// ------------------------------------------------- universal property

// A 2-structure C with an isometry i: B ⇸ C exhibiting B as a sub-3-structure
// whose square multiplies to nothing.
struct BinSubTarget {
  Frob2 C;
  FinRel i;
  Frob3 B;
};

struct FactorizationReport {
  bool morphism = false;          // f is a 2-structure morphism
  bool binsub_condition = false;  // f∘κ = i∘i†∘f∘κ
  bool recovers_h = false;        // i†∘f∘κ = h
  bool all() const { return morphism && binsub_condition && recovers_h; }
};

inline void require_binsub_target(const BinSubTarget& tg) {
  detail::require_symmetric_frobenius(tg.C, "universal_factorization");
  if (!sub3structure_check(tg.i, tg.B, two_to_three(tg.C)))
    throw PreconditionError("universal_factorization: i is not a sub-3-structure embedding into the target");
  if (compose(tensor(tg.i, tg.i), tg.C.mult).count() != 0)
    throw PreconditionError("universal_factorization: the multiplication does not vanish on i ⊗ i");
}

// f on E, determined blockwise by g = i∘h.
inline FinRel universal_factorization(const Envelope& env, const BinSubTarget& tg, const FinRel& h) {
  require_binsub_target(tg);
  if (!frob3_morphism_check(h, env.source, tg.B))
    throw PreconditionError("universal_factorization: h is not a 3-structure morphism");
  const std::size_t n = env.na, m = tg.C.size();
  auto g = compose(h, tg.i);
  auto inv = involution(tg.C);
  FinRel f(Obj(env.E), Obj(tg.C.carrier));
  for (std::size_t x = 0; x < n; ++x)
    g.for_each_in_row(x, [&](std::size_t a) {
      f.set(env.aplus(x), a);
      inv.for_each_in_row(a, [&](std::size_t ai) { f.set(env.aminus(x), ai); });
    });
  // [y,z]_l ↦ g(y)⁻¹·g(z) and [x,y]_r ↦ g(x)·g(y)⁻¹
  for (std::size_t c = 0; c < env.nql; ++c)
    for (auto p : env.ql_members[c])
      g.for_each_in_row(p / n, [&](std::size_t a) {
        inv.for_each_in_row(a, [&](std::size_t ai) {
          g.for_each_in_row(p % n, [&](std::size_t b) {
            tg.C.mult.for_each_in_row(ai * m + b, [&](std::size_t w) { f.set(env.ql(c), w); });
          });
        });
      });
  for (std::size_t c = 0; c < env.nqr; ++c)
    for (auto p : env.qr_members[c])
      g.for_each_in_row(p / n, [&](std::size_t a) {
        g.for_each_in_row(p % n, [&](std::size_t b) {
          inv.for_each_in_row(b, [&](std::size_t bi) {
            tg.C.mult.for_each_in_row(a * m + bi, [&](std::size_t w) { f.set(env.qr(c), w); });
          });
        });
      });
  return f;
}

inline FactorizationReport verify_factorization(const Envelope& env, const BinSubTarget& tg, const FinRel& h,
                                                const FinRel& f) {
  FactorizationReport r;
  r.morphism = frob2_morphism_check(f, env.structure, tg.C, false);
  auto fk = compose(env.kappa, f);
  r.binsub_condition = fk == compose(compose(fk, dagger(tg.i)), tg.i);
  r.recovers_h = compose(fk, dagger(tg.i)) == h;
  return r;
}

}  // namespace frobrel
