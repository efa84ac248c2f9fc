#pragma once

// Axioms of ternary structures stated as literal diagram equations and
// decided by the evaluator.

#include "frobrel/diagrams.hpp"

namespace frobrel {

namespace terms {

using diagrams::parse;
using diagrams::Term;

inline Term assoc_lhs() { return parse("(id+ * id- * mu3) ; mu3"); }
inline Term assoc_rhs() { return parse("(mu3 * id- * id+) ; mu3"); }

// x ↦ (u, z, y) for Λ(x,y,z,u), obtained by bending either side of μ₃.
inline Term symmetry_lhs() { return parse("(id+ * (cup ; (id- * cupx * id+))) ; (mu3 * id- * id+)"); }
inline Term symmetry_rhs() { return parse("((cupx ; (id+ * cup * id-)) * id+) ; (id+ * id- * mu3)"); }

inline Term left_loop() { return diagrams::left_loop_term(); }
inline Term right_loop() { return diagrams::right_loop_term(); }
inline Term l_endo() { return parse("(cup * id- * id+) ; (id- * mu3)"); }
inline Term r_endo() { return parse("(id+ * id- * cupx) ; (mu3 * id-)"); }

inline Term sliding_right_lhs() { return parse("(((id+ * cup) ; mu3) * id- * id+) ; mu3"); }
inline Term sliding_right_rhs() { return parse("mu3 ; (id+ * cup) ; mu3"); }
inline Term sliding_left_lhs() { return parse("(id+ * id- * ((cupx * id+) ; mu3)) ; mu3"); }
inline Term sliding_left_rhs() { return parse("mu3 ; (cupx * id+) ; mu3"); }

inline Term coassoc_lhs() { return parse("comu3 ; (id+ * id- * comu3)"); }
inline Term coassoc_rhs() { return parse("comu3 ; (comu3 * id- * id+)"); }
inline Term frobenius_left() { return parse("(id+ * id- * comu3) ; (mu3 * id- * id+)"); }
inline Term frobenius_middle() { return parse("mu3 ; comu3"); }
inline Term frobenius_right() { return parse("(comu3 * id- * id+) ; (id+ * id- * mu3)"); }

// Λ*(a,b,c,d) = Λ(b,c,d,a) on the dual carrier.
inline Term dual_structure() { return parse("(id- * id+ * id- * cupx) ; (id- * mu3 * id-) ; (capx * id-)"); }

// Λ(z,y,x,u): inputs reversed by swaps (commutative mode).
inline Term opposite_structure() { return parse("swap(+,-+) ; (swap(-,+) * id+) ; mu3"); }

}  // namespace terms

namespace detail {

inline bool same_eval(const diagrams::Term& a, const diagrams::Term& b, const Frob3& t) {
  return diagrams::eval(a, t) == diagrams::eval(b, t);
}

}  // namespace detail

inline bool diagram_assoc(const Frob3& t) { return detail::same_eval(terms::assoc_lhs(), terms::assoc_rhs(), t); }

inline bool diagram_dagger_symmetric(const Frob3& t) {
  auto comu = dagger(t.lambda);
  return diagrams::eval(terms::symmetry_lhs(), t) == comu && diagrams::eval(terms::symmetry_rhs(), t) == comu;
}

inline bool diagram_normal(const Frob3& t) {
  auto id = identity(Obj(t.carrier));
  return diagrams::eval(terms::left_loop(), t) == id && diagrams::eval(terms::right_loop(), t) == id;
}

inline bool diagram_left_idempotent(const Frob3& t) {
  auto l = diagrams::eval(terms::l_endo(), t);
  return compose(l, l) == l;
}

inline bool diagram_right_idempotent(const Frob3& t) {
  auto r = diagrams::eval(terms::r_endo(), t);
  return compose(r, r) == r;
}

// Loops slide through the multiplication on either side.
inline bool check_sliding(const Frob3& t) {
  return detail::same_eval(terms::sliding_right_lhs(), terms::sliding_right_rhs(), t) &&
         detail::same_eval(terms::sliding_left_lhs(), terms::sliding_left_rhs(), t);
}

// Hypothesis of the normal-form theorem.
inline bool is_sliding_structure(const Frob3& t) {
  return check_assoc3(t) && check_dagger_symmetric3(t) && check_sliding(t);
}

inline bool diagram_coassoc(const Frob3& t) { return detail::same_eval(terms::coassoc_lhs(), terms::coassoc_rhs(), t); }

inline bool diagram_frobenius_law(const Frob3& t) {
  auto mid = diagrams::eval(terms::frobenius_middle(), t);
  return diagrams::eval(terms::frobenius_left(), t) == mid && diagrams::eval(terms::frobenius_right(), t) == mid;
}

}  // namespace frobrel
