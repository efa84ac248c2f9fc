#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/spider_rules.hpp"
#include "support/structures.hpp"
#include "support/term_gen.hpp"

using namespace frobrel;
using namespace frobrel::diagrams;
using frobrel::testing::naive_eval;
using frobrel::testing::state_sum_eval;

namespace {

TypeWord W(const char* s) { return word_from_string(s); }

const std::vector<Frob3>& sliding2() {
  static const auto s = frobrel::testing::sliding_size2();
  return s;
}

const std::vector<Frob3>& normal3() {
  static const auto s = frobrel::testing::sampled_normal_size3(10);
  return s;
}

bool same_on(const Term& a, const Term& b, const std::vector<Frob3>& ts, bool commutative = false) {
  for (const auto& t : ts)
    if (!(eval(a, t, commutative) == eval(b, t, commutative))) return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> small_shapes() { return {{1, 1}, {1, 3}, {3, 1}, {3, 3}, {5, 1}, {1, 5}}; }

}  // namespace

// ------------------------------------------------------------ syntax

TEST(Syntax, PrintParseRoundtripOnRandomTerms) {
  std::mt19937_64 rng(31);
  frobrel::testing::TermGenOptions opt;
  opt.allow_swap = true;
  for (int k = 0; k < 500; ++k) {
    auto t = frobrel::testing::random_term(rng, opt);
    ASSERT_TRUE(t.has_value());
    auto text = print(*t);
    auto back = parse(text);
    EXPECT_EQ(back, *t) << text;
    EXPECT_EQ(print(back), text);
  }
}

TEST(Syntax, PrecedenceAndWhitespace) {
  EXPECT_EQ(print(parse("id+*id-;cap")), "id+ * id- ; cap");
  EXPECT_EQ(parse("id+ * id- ; cap"), Term::seq(Term::par(Term::gen(Gen::id_plus), Term::gen(Gen::id_minus)), Term::gen(Gen::cap)));
  EXPECT_EQ(parse("(id+ * id-) ; cap"), parse("id+ * id- ; cap"));
  EXPECT_EQ(print(parse("mu3 ; (id+ ; id+)")), "mu3 ; (id+ ; id+)");
  EXPECT_EQ(print(parse("id+ * (id- * id+)")), "id+ * (id- * id+)");
  EXPECT_EQ(print(parse(" swap( +- , + ) ")), "swap(+-,+)");
}

TEST(Syntax, ErrorsCarryPositions) {
  auto expect_at = [](const char* text, std::size_t line, std::size_t col) {
    try {
      parse(text);
      ADD_FAILURE() << "no error for " << text;
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.line(), line) << text << ": " << e.what();
      EXPECT_EQ(e.column(), col) << text << ": " << e.what();
    }
  };
  expect_at("mu3 ;\n  bar", 2, 3);
  expect_at("(mu3", 1, 5);
  expect_at("mu3 $", 1, 5);
  for (const char* bad : {"", "mu3 ;", "swap(+,x)", "swap(,+)", "id", "id*", "mu3 )", "(;)"})
    EXPECT_THROW(parse(bad), SyntaxError) << bad;
}

TEST(Typing, GeneratorsAndComposites) {
  EXPECT_EQ(typecheck(parse("mu3")), (Typing{W("+-+"), W("+")}));
  EXPECT_EQ(typecheck(parse("cup * id+")), (Typing{W("+"), W("-++")}));
  EXPECT_EQ(typecheck(terms::assoc_lhs()), (Typing{W("+-+-+"), W("+")}));
  EXPECT_EQ(signature(typecheck(parse("capx"))), "(-+) -> ()");
  EXPECT_THROW(typecheck(parse("mu3 ; mu3")), TypeError);
  EXPECT_THROW(typecheck(parse("cup ; cap")), TypeError);
  EXPECT_THROW(typecheck(parse("swap(+,-)")), TypeError);
  EXPECT_EQ(typecheck(parse("swap(+,-)"), true), (Typing{W("+-"), W("-+")}));
  EXPECT_EQ(node_count(terms::frobenius_left()), 2u);
  EXPECT_TRUE(uses_swap(terms::opposite_structure()));
}

// ------------------------------------------------------------ semantics

TEST(Eval, AgreesWithTupleSemanticsOnRandomTerms) {
  std::mt19937_64 rng(32);
  frobrel::testing::TermGenOptions opt;
  opt.allow_swap = true;
  std::vector<Frob3> ts{examples::cyclic_heap(2), examples::tproj(2), examples::full3(2)};
  std::mt19937 coin(5);
  ts.push_back(Frob3::from_predicate(FinSet("R", 2), [&](auto, auto, auto, auto) { return coin() % 3 == 0; }));
  for (int k = 0; k < 500; ++k) {
    auto t = frobrel::testing::random_term(rng, opt);
    bool swaps = uses_swap(*t);
    const auto& s = swaps ? ts[static_cast<std::size_t>(k) % 2 * 2] : ts[static_cast<std::size_t>(k) % ts.size()];
    EXPECT_EQ(eval(*t, s, swaps), naive_eval(*t, s)) << print(*t);
  }
}

TEST(Eval, AgreesWithStateSumOverTheGraph) {
  std::mt19937_64 rng(33);
  frobrel::testing::TermGenOptions opt;
  opt.allow_swap = true;
  opt.max_nodes = 4;
  opt.max_width = 5;
  auto heap3 = examples::cyclic_heap(3);
  auto heap2 = examples::cyclic_heap(2), proj2 = examples::tproj(2);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    auto t = frobrel::testing::random_term(rng, opt);
    auto g = to_graph(*t);
    if (g.wires.size() > 16) continue;
    bool swaps = uses_swap(*t);
    const auto& s = g.wires.size() <= 9 ? heap3 : swaps ? heap2 : proj2;
    EXPECT_EQ(eval(*t, s, swaps), state_sum_eval(*t, s)) << print(*t);
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Eval, CommutativeModeNeedsCommutativeStructure) {
  EXPECT_THROW(eval(parse("swap(+,+)"), examples::tproj(2), true), PreconditionError);
  EXPECT_EQ(eval(parse("swap(+,+)"), examples::cyclic_heap(2), true).count(), 4u);
  EXPECT_THROW(eval(parse("swap(+,+)"), examples::cyclic_heap(2)), TypeError);
}

TEST(Eval, IsCompositional) {
  std::mt19937_64 rng(34);
  frobrel::testing::TermGenOptions opt;
  auto s = examples::tproj(2);
  for (int k = 0; k < 200; ++k) {
    auto a = frobrel::testing::random_term(rng, opt);
    auto b = frobrel::testing::random_term(rng, opt);
    EXPECT_EQ(eval(Term::par(*a, *b), s), tensor(eval(*a, s), eval(*b, s)));
    auto ta = typecheck(*a);
    auto c = Term::seq(*a, *id_word(ta.out.empty() ? W("+") : ta.out));
    if (!ta.out.empty()) {
      EXPECT_EQ(eval(c, s), eval(*a, s));
    }
  }
}

// ------------------------------------------------------------ graphs

TEST(Graph, LoopProfileAndFaces) {
  auto g = to_graph(terms::left_loop());
  EXPECT_EQ(g.nodes.size(), 1u);
  EXPECT_EQ(loop_profile(g).internal_loop_count, 1u);
  EXPECT_TRUE(loop_profile(g).connected);
  EXPECT_EQ(count_faces(g).left, 1u);
  EXPECT_EQ(count_faces(g).right, 0u);
  auto r = count_faces(to_graph(terms::right_loop()));
  EXPECT_EQ(r.left, 0u);
  EXPECT_EQ(r.right, 1u);
  auto f = count_faces(to_graph(parse("comu3 ; mu3")));
  EXPECT_EQ(f.left + f.right, 2u);
  EXPECT_FALSE(loop_profile(to_graph(parse("mu3 * mu3"))).connected);
  EXPECT_EQ(loop_profile(to_graph(parse("cupx ; cap"))).internal_loop_count, 1u);
  EXPECT_EQ(to_graph(parse("cupx ; cap")).free_loops, 1u);
}

TEST(Graph, FacesOfSpidersRecoverLoopCounts) {
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n)
      for (auto [i, o] : small_shapes()) {
        auto f = count_faces(to_graph(spider(m, n, alternating_word(i), alternating_word(o))));
        EXPECT_EQ(f.left, m);
        EXPECT_EQ(f.right, n);
      }
}

// ------------------------------------------------------------ spiders

TEST(Spider, TrivialExamples) {
  EXPECT_EQ(spider(0, 0, W("+-+"), W("+")), parse("mu3"));
  EXPECT_EQ(spider(0, 0, W("+"), W("+-+")), parse("comu3"));
  EXPECT_EQ(spider(1, 0, W("+"), W("+")), left_loop_term());
  EXPECT_EQ(spider(0, 1, W("+"), W("+")), right_loop_term());
  EXPECT_EQ(spider(0, 0, W("+"), W("+")), parse("id+"));
  EXPECT_THROW(spider(0, 0, W("+-"), W("+")), PreconditionError);
  EXPECT_THROW(spider(0, 1, {}, {}), PreconditionError);
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n)
      for (auto [i, o] : small_shapes())
        EXPECT_EQ(typecheck(spider(m, n, alternating_word(i), alternating_word(o))),
                  (Typing{alternating_word(i), alternating_word(o)}));
}

TEST(SpiderRules, BendingOutputEqualsBendingInput) {
  ASSERT_EQ(sliding2().size(), 16u);
  for (const auto& f : frobrel::testing::failing(frobrel::testing::bending_equations(), sliding2())) ADD_FAILURE() << f;
}

TEST(SpiderRules, CapAndCupBecomeLoops) {
  for (const auto& f : frobrel::testing::failing(frobrel::testing::loop_equations(), sliding2())) ADD_FAILURE() << f;
}

TEST(SpiderRules, CompositionAddsLoops) {
  auto eqs = frobrel::testing::composition_equations();
  EXPECT_EQ(eqs.size(), 4u * 16u * 16u);
  for (const auto& f : frobrel::testing::failing(eqs, sliding2())) ADD_FAILURE() << f;
}

// ------------------------------------------------------------ normalizer

TEST(Normalize, DocumentedDescriptors) {
  auto d = normalize(parse("mu3"));
  EXPECT_EQ(d.m, 0u);
  EXPECT_EQ(d.n, 0u);
  EXPECT_EQ(d.in_word, W("+-+"));
  EXPECT_EQ(d.out_word, W("+"));
  EXPECT_TRUE(d.bending.empty());
  d = normalize(left_loop_term());
  EXPECT_EQ(d.m, 1u);
  EXPECT_EQ(d.n, 0u);
  EXPECT_EQ(d.in_word, W("+"));
  d = normalize(parse("comu3 ; mu3"));
  EXPECT_EQ(d.m, 1u);
  EXPECT_EQ(d.n, 1u);
  EXPECT_TRUE(d.bending.empty());
  EXPECT_TRUE(same_on(parse("comu3 ; mu3"), spider_of(d), sliding2()));
  // Over normal structures the loops vanish.
  EXPECT_TRUE(same_on(parse("comu3 ; mu3"), parse("id+"), normal3()));
}

TEST(Normalize, BendsWhenTheBoundaryIsNotAlternating) {
  auto t = parse("cup ; (id- * comu3)");
  auto d = normalize(t);
  ASSERT_EQ(d.bending.ops.size(), 1u);
  EXPECT_EQ(d.bending.ops[0].kind, BendKind::output_left);
  EXPECT_TRUE(same_on(apply_bending(t, d.bending), spider_of(d), sliding2()));
  EXPECT_TRUE(is_spider_word(d.in_word) && is_spider_word(d.out_word));
  auto l = normalize(terms::l_endo());
  ASSERT_EQ(l.bending.ops.size(), 1u);
  EXPECT_EQ(l.bending.ops[0].kind, BendKind::output_left);
  EXPECT_EQ(l.in_word, W("+-+"));
  EXPECT_EQ(l.out_word, W("+"));
}

TEST(Normalize, RejectsDisconnectedAndClosed) {
  EXPECT_THROW(normalize(parse("mu3 * mu3")), PreconditionError);
  EXPECT_THROW(normalize(parse("cupx ; (mu3 * id-) ; cap"), false), TypeError);
  EXPECT_THROW(normalize(parse("cupx ; cap")), PreconditionError);
  auto closed = normalize(parse("cupx ; cap"), true);
  EXPECT_EQ(closed.m, 1u);
}

TEST(Normalize, SoundOnRandomPlanarTerms) {
  std::mt19937_64 rng(35);
  frobrel::testing::TermGenOptions opt;
  for (int k = 0; k < 200; ++k) {
    auto t = frobrel::testing::random_connected_term(rng, opt);
    NormalFormDescriptor d;
    try {
      d = normalize(t);
    } catch (const PreconditionError& e) {
      ADD_FAILURE() << print(t) << ": " << e.what();
      continue;
    }
    auto bent = apply_bending(t, d.bending);
    EXPECT_TRUE(same_on(bent, spider_of(d), sliding2())) << print(t);
    EXPECT_TRUE(same_on(bent, spider_of(d), normal3())) << print(t);
  }
}

TEST(Normalize, SoundOnRandomCommutativeTerms) {
  auto comm2 = frobrel::testing::commutative_only(sliding2());
  auto comm3 = frobrel::testing::commutative_only(normal3());
  comm3.push_back(examples::cyclic_heap(3));
  ASSERT_FALSE(comm2.empty());
  std::mt19937_64 rng(36);
  frobrel::testing::TermGenOptions opt;
  opt.allow_swap = true;
  opt.max_nodes = 4;
  for (int k = 0; k < 150; ++k) {
    auto t = frobrel::testing::random_connected_term(rng, opt);
    auto d = normalize(t, true);
    auto bent = apply_bending(t, d.bending);
    EXPECT_TRUE(same_on(bent, spider_of(d), comm2, true)) << print(t);
    EXPECT_TRUE(same_on(bent, spider_of(d), comm3, true)) << print(t);
  }
}

// ------------------------------------------------------------ corollary

TEST(Corollary, LoopFreeTermsOfEqualTypeAgree) {
  std::mt19937_64 rng(37);
  frobrel::testing::TermGenOptions opt;
  opt.allow_loops = false;
  std::map<std::pair<TypeWord, TypeWord>, std::vector<Term>> by_type;
  for (int k = 0; k < 400; ++k) {
    auto t = frobrel::testing::random_connected_term(rng, opt);
    auto ty = typecheck(t);
    by_type[{ty.in, ty.out}].push_back(t);
  }
  std::size_t pairs = 0;
  for (const auto& [ty, ts] : by_type)
    for (std::size_t i = 1; i < ts.size() && i < 6; ++i) {
      EXPECT_TRUE(corollary_check(ts[0], ts[i], sliding2())) << print(ts[0]) << " vs " << print(ts[i]);
      ++pairs;
    }
  EXPECT_GT(pairs, 20u);
}

TEST(Corollary, LoopsMatterOnNonNormalStructures) {
  EXPECT_FALSE(corollary_check(parse("id+"), left_loop_term(), sliding2()));
  EXPECT_TRUE(corollary_check(parse("id+"), left_loop_term(), normal3()));
  EXPECT_THROW(corollary_check(parse("mu3"), parse("id+"), sliding2()), ShapeError);
}
