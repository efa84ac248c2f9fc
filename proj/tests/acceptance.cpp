// One PASS/FAIL line per acceptance criterion; nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "frobrel/frl.hpp"
#include "frobrel/search.hpp"
#include "support/connectors.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"
#include "support/spider_rules.hpp"
#include "support/structures.hpp"
#include "support/term_gen.hpp"

using namespace frobrel;
using namespace frobrel::examples;
namespace ft = frobrel::testing;

namespace {

// Collects failed conditions for one criterion.
class Check {
 public:
  void require(bool cond, const std::string& what) {
    ++total_;
    if (!cond && failures_.size() < 8) failures_.push_back(what);
    failed_ += !cond;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << total_ << " checks";
    if (!notes_.empty()) os << "; " << notes_;
    for (const auto& f : failures_) os << "\n    failed: " << f;
    if (failed_ > failures_.size()) os << "\n    ... " << failed_ - failures_.size() << " more";
    return os.str();
  }

 private:
  std::size_t total_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

Frob2 raw_frob2(std::uint32_t m, std::uint32_t u) {
  Frob2 f(FinSet("A", 2));
  for (std::size_t b = 0; b < 8; ++b)
    if ((m >> b) & 1) f.mult.set(b / 2, b % 2);
  for (std::size_t x = 0; x < 2; ++x) f.unit[x] = (u >> x) & 1;
  return f;
}

template <class T>
std::vector<bool> key(const T& r) {
  std::vector<bool> k;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) k.push_back(r(i, j));
  return k;
}

std::vector<bool> key2(const Frob2& f) {
  auto k = key(f.mult);
  k.insert(k.end(), f.unit.begin(), f.unit.end());
  return k;
}

FinRel graph(const FinSet& a, const FinSet& b, const std::vector<std::size_t>& map) {
  FinRel r{Obj(a), Obj(b)};
  for (std::size_t x = 0; x < map.size(); ++x) r.set(x, map[x]);
  return r;
}

std::vector<std::vector<bool>> subsets(std::size_t n) {
  std::vector<std::vector<bool>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<bool> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (m >> i) & 1;
    out.push_back(s);
  }
  return out;
}

// ------------------------------------------------------------------ 1

void groupoid_correspondence(Check& c) {
  std::vector<Frob2> survivors;
  for (std::uint32_t m = 0; m < 256; ++m)
    for (std::uint32_t u = 0; u < 4; ++u)
      if (auto f = raw_frob2(m, u); check_frob2(f).all()) survivors.push_back(f);
  auto groupoids = search::enumerate_groupoids(2);
  c.note("candidates 1024, survivors " + std::to_string(survivors.size()) + ", groupoids " +
         std::to_string(groupoids.count));
  c.require(survivors.size() == 3, "three survivors");
  c.require(groupoids.count == survivors.size(), "survivor count equals groupoid count");
  std::set<std::vector<bool>> from_scan, from_groupoids;
  for (const auto& f : survivors) {
    from_scan.insert(key2(f));
    auto g = frob2_to_groupoid(f);
    c.require(check_groupoid(g).all(), "converted survivor is a groupoid");
    c.require(groupoid_to_frob2(g) == f, "groupoid_to_frob2 . frob2_to_groupoid = id");
  }
  for (const auto& g : groupoids.survivors) {
    auto f = groupoid_to_frob2(g);
    from_groupoids.insert(key2(f));
    c.require(frob2_to_groupoid(f) == g, "frob2_to_groupoid . groupoid_to_frob2 = id");
  }
  c.require(from_scan == from_groupoids, "the two enumerations produce the same structures");
}

// ------------------------------------------------------------------ 2

void connector_correspondence(Check& c) {
  std::vector<Frob3> survivors;
  for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
    auto t = ft::incidence2(bits);
    if (check_assoc3(t) && check_dagger_symmetric3(t) && check_normal3(t)) survivors.push_back(t);
  }
  auto conns = search::enumerate_connectors(2);
  c.note("candidates 65536, survivors " + std::to_string(survivors.size()) + ", connectors " +
         std::to_string(conns.count));
  c.require(survivors.size() == 4, "four survivors");
  c.require(conns.count == survivors.size(), "survivor count equals connector count");
  std::set<std::vector<bool>> a, b;
  for (const auto& t : survivors) {
    a.insert(key(t.lambda));
    auto k = frob3_to_connector(t);
    c.require(check_connector(k).all(), "converted survivor is a connector");
    c.require(connector_to_frob3(k) == t, "connector_to_frob3 . frob3_to_connector = id");
  }
  for (const auto& k : conns.survivors) {
    auto t = connector_to_frob3(k);
    b.insert(key(t.lambda));
    c.require(frob3_to_connector(t) == k, "frob3_to_connector . connector_to_frob3 = id");
  }
  c.require(a == b, "the two enumerations produce the same structures");
}

// ------------------------------------------------------------------ 3

void bridge(Check& c) {
  std::size_t twos = 0, threes = 0;
  for (std::uint32_t m = 0; m < 256; ++m)
    for (std::uint32_t u = 0; u < 4; ++u) {
      auto f = raw_frob2(m, u);
      auto r = check_frob2(f);
      if (!(r.F1_unit_left && r.F2_unit_right && r.F3_assoc && r.F5_frobenius && is_symmetric(f))) continue;
      ++twos;
      c.require(three_to_two(two_to_three(f), f.unit) == f, "three_to_two . two_to_three = id (size 2)");
    }
  for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
    auto t = ft::incidence2(bits);
    if (!check_frob3(t).frobenius()) continue;
    for (const auto& e : unit_candidates(t)) {
      ++threes;
      c.require(two_to_three(three_to_two(t, e)) == t, "two_to_three . three_to_two = id (size 2)");
      c.require(special_normal_equivalences(t, e).agree(), "special <=> normal <=> idempotent (size 2)");
    }
  }
  auto sweep = search::sweep_roundtrips(search::curated_frob2(), search::curated_frob3());
  for (const auto& f : sweep.failures) c.require(false, f);
  c.require(sweep.checks > 0, "curated sweep ran");
  c.note(std::to_string(twos) + " symmetric 2-structures and " + std::to_string(threes) +
         " unital 3-structures on two points, " + std::to_string(sweep.checks) + " curated checks");
}

// ------------------------------------------------------------------ 4

void goursat(Check& c) {
  auto z4 = cyclic_group(4);
  auto gap = search::find_cp_gap(z4);
  c.require(gap.has_value(), "find_cp_gap(Z4) returns a witness");
  if (gap) {
    std::string w;
    for (std::size_t i = 0; i < 4; ++i)
      if ((*gap)[i]) w += (w.empty() ? "" : ",") + std::to_string(i);
    c.note("witness {" + w + "}");
    c.require(!is_closed_subset(*gap, z4), "witness is not a subgroupoid");
    auto rep = cp_state(*gap, z4);
    c.require(rep.is_cp, "witness passes the CP criterion");
    c.require(ft::brute_force_cp(rep.c_of_f, 10), "witness factors as g;g-dagger with at most 10 columns");
  }
  std::vector<std::pair<std::string, Frob2>> suite;
  for (const auto& [name, f] : search::curated_frob2())
    if (f.size() <= 6) suite.push_back({name, f});
  for (std::size_t n = 1; n <= 4; ++n) {
    auto gs = search::enumerate_groupoids(n);
    for (std::size_t i = 0; i < gs.survivors.size(); ++i)
      suite.push_back({"groupoid" + std::to_string(n) + "#" + std::to_string(i), groupoid_to_frob2(gs.survivors[i])});
  }
  std::size_t closed = 0;
  for (const auto& [name, f] : suite)
    for (const auto& s : subsets(f.size())) {
      if (!is_closed_subset(s, f)) continue;
      ++closed;
      auto rep = cp_state(s, f);
      c.require(rep.is_cp && ft::brute_force_cp(rep.c_of_f, 10), name + ": subgroupoid is CP");
    }
  c.note(std::to_string(closed) + " subgroupoids in " + std::to_string(suite.size()) + " groupoids");
}

// ------------------------------------------------------------------ 5

void splitting(Check& c) {
  auto s = split_construction(cyclic_heap(3));
  c.note("split(T3) has " + std::to_string(s.L.size) + " classes");
  c.require(s.L.size == 3, "three classes");
  c.require(find_frob2_isomorphism(s.two_structure, cyclic_group(3)).has_value(), "split(T3) isomorphic to Z3");
  std::size_t members = 0;
  for (const auto& [name, f] : search::curated_frob2()) {
    if (!check_frob2(f).all() || !is_symmetric(f) || f.size() > 8) continue;
    ++members;
    auto sp = split_construction(two_to_three(f));
    c.require(find_frob2_isomorphism(sp.two_structure, f).has_value(), name + ": split . two_to_three = id up to iso");
  }
  c.note(std::to_string(members) + " special symmetric members");
}

// ------------------------------------------------------------------ 6

void envelope_criterion(Check& c) {
  std::size_t members = 0;
  for (const auto& [name, t] : search::curated_frob3()) {
    auto r = check_frob3(t);
    if (t.size() > 3 || !(r.normal && r.dagger_symmetric && r.assoc)) continue;
    ++members;
    auto v = verify_envelope(envelope(t));
    c.require(v.frob2.all() && v.symmetric, name + ": envelope is special dagger Frobenius and symmetric");
    c.require(v.groupoid, name + ": envelope converts to a groupoid");
    c.require(v.kappa_sub3, name + ": kappa is a sub-3-structure");
    c.require(v.kappa_square_zero, name + ": multiplication vanishes on kappa x kappa");
  }
  auto g = frob2_to_groupoid(envelope(cyclic_heap(2)).structure);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> hom;
  for (std::size_t a = 0; a < g.num_arrows(); ++a) ++hom[{g.source[a], g.target[a]}];
  bool all_two = hom.size() == 4;
  for (const auto& [k, v] : hom) all_two = all_two && v == 2;
  c.note(std::to_string(members) + " normal members; E(Z2) has " + std::to_string(g.num_arrows()) + " morphisms over " +
         std::to_string(g.num_objects()) + " objects");
  c.require(g.num_arrows() == 8 && g.num_objects() == 2 && all_two, "E(Z2): 8 morphisms, 2 objects, hom-sets of size 2");

  auto instance = [&](const std::string& name, const Frob3& t, const BinSubTarget& tg, const FinRel& h,
                      const FinRel* expect) {
    auto env = envelope(t);
    auto f = universal_factorization(env, tg, h);
    auto v = verify_factorization(env, tg, h, f);
    c.require(v.recovers_h, name + ": i-dagger . f . kappa = h");
    c.require(v.morphism && v.binsub_condition, name + ": f is an admissible 2-structure morphism");
    if (expect) c.require(f == *expect, name + ": f = id");
  };
  auto tp = tproj(2);
  auto env_tp = envelope(tp);
  auto id_tp = identity(Obj(env_tp.E));
  instance("E(Tproj2) into itself", tp, {env_tp.structure, env_tp.kappa, tp}, identity(Obj(tp.carrier)), &id_tp);
  auto z2 = cyclic_heap(2);
  auto env_z2 = envelope(z2);
  auto id_z2 = identity(Obj(env_z2.E));
  instance("Z2 into its envelope", z2, {env_z2.structure, env_z2.kappa, z2}, identity(Obj(z2.carrier)), &id_z2);
  auto coset = restrict3(cyclic_heap(4), {1, 3}, "K").structure;
  auto C = frob2_product(cyclic_group(4), pants(FinSet("P", 2)));
  auto i = graph(coset.carrier, C.carrier, {1 * 4 + 2, 3 * 4 + 2});
  instance("coset {1,3} in Z4", coset, {C, i, coset}, identity(Obj(coset.carrier)), nullptr);
}

// ------------------------------------------------------------------ 7

void diagram_calculus(Check& c) {
  auto g = ft::golden_cross_check();
  c.require(g.disagreements == 0, "golden cross-check: " + std::to_string(g.disagreements) + " disagreements");
  c.note("golden: 65536 incidences, assoc " + std::to_string(g.assoc) + ", dagger " + std::to_string(g.dagger) +
         ", sliding " + std::to_string(g.sliding) + ", 0 disagreements required");

  auto sliding2 = ft::sliding_size2();
  auto normal3 = ft::sampled_normal_size3(10);
  c.require(sliding2.size() == 16, "16 sliding structures on two points");
  c.require(normal3.size() == 10, "10 sampled normal structures on three points");
  std::size_t eqs = 0;
  for (const auto& family : {ft::bending_equations(), ft::loop_equations(), ft::composition_equations()}) {
    eqs += family.size();
    for (const auto& f : ft::failing(family, sliding2)) c.require(false, "spider rule " + f);
  }
  c.require(eqs > 0, "spider rules generated");

  auto agree = [](const diagrams::Term& a, const diagrams::Term& b, const std::vector<Frob3>& ts) {
    for (const auto& t : ts)
      if (!(diagrams::eval(a, t) == diagrams::eval(b, t))) return false;
    return true;
  };
  std::mt19937_64 rng(2024);
  ft::TermGenOptions opt;
  for (int k = 0; k < 200; ++k) {
    auto t = ft::random_connected_term(rng, opt);
    try {
      auto d = diagrams::normalize(t);
      auto bent = diagrams::apply_bending(t, d.bending);
      c.require(agree(bent, diagrams::spider_of(d), sliding2) && agree(bent, diagrams::spider_of(d), normal3),
                "normal form of " + diagrams::print(t));
    } catch (const Error& e) {
      c.require(false, "normalize " + diagrams::print(t) + ": " + e.what());
    }
  }

  opt.allow_loops = false;
  std::map<std::pair<diagrams::TypeWord, diagrams::TypeWord>, std::vector<diagrams::Term>> by_type;
  for (int k = 0; k < 400; ++k) {
    auto t = ft::random_connected_term(rng, opt);
    auto ty = diagrams::typecheck(t);
    by_type[{ty.in, ty.out}].push_back(t);
  }
  std::size_t pairs = 0;
  for (const auto& [ty, ts] : by_type)
    for (std::size_t i = 1; i < ts.size() && i < 6; ++i) {
      ++pairs;
      c.require(diagrams::corollary_check(ts[0], ts[i], sliding2) && diagrams::corollary_check(ts[0], ts[i], normal3),
                "loop-free pair " + diagrams::print(ts[0]) + " vs " + diagrams::print(ts[i]));
    }
  c.require(pairs >= 20, "enough loop-free pairs");
  c.note(std::to_string(eqs) + " spider equations, 200 normal forms, " + std::to_string(pairs) + " corollary pairs");
}

// ------------------------------------------------------------------ 8

void non_faithful(Check& c) {
  auto doc = frl::load(std::string(FROBREL_DATA_DIR) + "/z2_connectors.frl");
  const auto& a = std::get<Connector>(doc.select("trivial").value);
  const auto& b = std::get<Connector>(doc.select("xor").value);
  c.require(check_connector(a).all() && check_connector(b).all(), "both connectors pass check_connector");
  c.require(!(a.R_eq == b.R_eq), "R_eq differ");
  c.require(!ft::connectors_isomorphic(a, b), "no connector isomorphism");
  std::vector<std::size_t> id{0, 1};
  c.require(ft::connector_hom(id, a, a) && ft::connector_hom(id, a, b), "identity carrier maps are connector maps");
  c.require(!ft::connector_hom(id, b, a), "identity does not map back");
  // Spans a <- a -> a and a <- a -> b both have underlying relation id.
  auto leg = identity(Obj(a.carrier));
  c.require(compose(dagger(leg), leg) == identity(Obj(a.carrier)), "underlying relation is the identity");
  auto ta = connector_to_frob3(a);
  c.require(ta == Frob3::from_predicate(a.carrier, [](auto x, auto y, auto z, auto u) { return x == y && y == z && z == u; }),
            "trivial connector gives the diagonal 3-structure");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "groupoid correspondence on 2-element carrier", groupoid_correspondence},
      {2, "connector correspondence on 2-element carrier", connector_correspondence},
      {3, "2<->3 bridge roundtrips and special/normal equivalence", bridge},
      {4, "Goursat necessity: CP gap in Z4, subgroupoids are CP", goursat},
      {5, "splitting", splitting},
      {6, "enveloping structure and universal factorization", envelope_criterion},
      {7, "diagram calculus", diagram_calculus},
      {8, "non-faithfulness regression", non_faithful},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.0f ms; %s)\n", c.ok() ? "PASS" : "FAIL", cr.id, cr.title, ms,
                c.summary().c_str());
    std::fflush(stdout);
    failed += !c.ok();
  }
  return failed == 0 ? 0 : 1;
}
