#pragma once

// Exhaustive and pruned enumeration of small structures, counterexample
// search and converter roundtrip sweeps.

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "frobrel/bridges.hpp"

namespace frobrel::search {

template <class T>
struct EnumReport {
  std::string kind;
  std::size_t carrier_size = 0;
  double candidate_space = 0;  // may exceed 2^64
  std::string strategy;
  std::vector<T> survivors;
  std::size_t count = 0;
  double wall_ms = 0;
};

namespace detail {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline FinSet carrier(std::size_t n) { return FinSet("A", n); }

}  // namespace detail

// ------------------------------------------------------------------ frob2

// n ≤ 2: every (M,U). n = 3: M ranges over partial binary operations, since
// speciality forces single-valuedness.
inline EnumReport<Frob2> enumerate_frob2(std::size_t n) {
  detail::Stopwatch sw;
  EnumReport<Frob2> rep;
  rep.kind = "frob2";
  rep.carrier_size = n;
  const auto a = detail::carrier(n);
  const std::size_t n2 = n * n, n3 = n2 * n;
  if (n <= 2) {
    rep.strategy = "raw";
    rep.candidate_space = std::pow(2.0, static_cast<double>(n3 + n));
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n3); ++m)
      for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
        Frob2 f(a);
        for (std::size_t b = 0; b < n3; ++b)
          if (m >> b & 1) f.mult.set(b / n, b % n);
        for (std::size_t x = 0; x < n; ++x) f.unit[x] = (u >> x & 1) != 0;
        if (check_frob2(f).all()) rep.survivors.push_back(std::move(f));
      }
  } else if (n == 3) {
    rep.strategy = "partial-operations";
    rep.candidate_space = std::pow(static_cast<double>(n + 1), static_cast<double>(n2)) * std::pow(2.0, static_cast<double>(n));
    std::vector<std::size_t> op(n2, 0);  // 0 = undefined, c+1 = c
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
      std::vector<bool> unit(n);
      for (std::size_t x = 0; x < n; ++x) unit[x] = (u >> x & 1) != 0;
      // Odometer over all partial operations.
      std::fill(op.begin(), op.end(), 0);
      for (;;) {
        // Cheap unit-law prefilter: ∃e∈U e·a = c ⟺ a = c, and likewise on the right.
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) {
          std::size_t hits_l = 0, hits_r = 0;
          for (std::size_t e = 0; e < n; ++e) {
            if (!unit[e]) continue;
            auto l = op[e * n + x], r = op[x * n + e];
            if (l && l - 1 != x) ok = false;
            if (r && r - 1 != x) ok = false;
            hits_l += l != 0;
            hits_r += r != 0;
          }
          ok = ok && hits_l > 0 && hits_r > 0;
        }
        if (ok) {
          Frob2 f(a);
          f.unit = unit;
          for (std::size_t p = 0; p < n2; ++p)
            if (op[p]) f.mult.set(p, op[p] - 1);
          if (check_frob2(f).all()) rep.survivors.push_back(std::move(f));
        }
        std::size_t k = 0;
        while (k < n2 && ++op[k] > n) op[k++] = 0;
        if (k == n2) break;
      }
    }
  } else {
    throw PreconditionError("enumerate_frob2: carrier size " + std::to_string(n) + " exceeds the cap of 3");
  }
  rep.count = rep.survivors.size();
  rep.wall_ms = sw.ms();
  return rep;
}

// ------------------------------------------------------------- groupoids

namespace detail {

// Backtracking over composition tables. Composites must have the right
// endpoints, respect units, and be injective in each argument.
class GroupoidSearch {
 public:
  GroupoidSearch(Groupoid g, std::vector<Groupoid>& out) : g_(std::move(g)), out_(out) {
    const std::size_t n = g_.num_arrows();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (g_.source[a] == g_.target[b]) pairs_.emplace_back(a, b);
    used_row_.assign(n * n, false);
    used_col_.assign(n * n, false);
  }

  void run() { step(0); }

 private:
  Groupoid g_;
  std::vector<Groupoid>& out_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<bool> used_row_, used_col_;  // (a, c) and (b, c) already produced

  bool is_unit(std::size_t a) const { return g_.unit[g_.target[a]] == a && g_.source[a] == g_.target[a]; }

  void step(std::size_t k) {
    const std::size_t n = g_.num_arrows();
    if (k == pairs_.size()) {
      finish();
      return;
    }
    auto [a, b] = pairs_[k];
    std::vector<std::size_t> cands;
    if (is_unit(a)) cands = {b};
    else if (is_unit(b)) cands = {a};
    else
      for (std::size_t c = 0; c < n; ++c)
        if (g_.source[c] == g_.source[b] && g_.target[c] == g_.target[a]) cands.push_back(c);
    for (auto c : cands) {
      if (used_row_[a * n + c] || used_col_[b * n + c]) continue;
      used_row_[a * n + c] = used_col_[b * n + c] = true;
      g_.set_compose(a, b, c);
      step(k + 1);
      used_row_[a * n + c] = used_col_[b * n + c] = false;
    }
    g_.set_compose(a, b, std::nullopt);
  }

  void finish() {
    const std::size_t n = g_.num_arrows();
    for (auto [a, b] : pairs_)
      for (std::size_t c = 0; c < n; ++c) {
        if (g_.source[b] != g_.target[c]) continue;
        if (*g_.compose(*g_.compose(a, b), c) != *g_.compose(a, *g_.compose(b, c))) return;
      }
    for (std::size_t a = 0; a < n; ++a) {
      bool found = false;
      for (std::size_t b = 0; b < n && !found; ++b)
        if (g_.source[a] == g_.target[b] && g_.source[b] == g_.target[a] && *g_.compose(a, b) == g_.unit[g_.target[a]] &&
            *g_.compose(b, a) == g_.unit[g_.source[a]]) {
          g_.inverse[a] = b;
          found = true;
        }
      if (!found) return;
    }
    out_.push_back(g_);
  }
};

}  // namespace detail

// Labeled groupoids on n arrows; objects are numbered by increasing unit arrow.
inline EnumReport<Groupoid> enumerate_groupoids(std::size_t n) {
  if (n > 6) throw PreconditionError("enumerate_groupoids: at most 6 arrows");
  detail::Stopwatch sw;
  EnumReport<Groupoid> rep;
  rep.kind = "groupoid";
  rep.carrier_size = n;
  rep.strategy = "backtracking";
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
    if (u == 0 && n > 0) continue;  // every object needs a unit, every arrow an object
    std::vector<std::size_t> units;
    for (std::size_t x = 0; x < n; ++x)
      if (u >> x & 1) units.push_back(x);
    const std::size_t k = units.size();
    std::vector<std::size_t> free;
    for (std::size_t x = 0; x < n; ++x)
      if (!(u >> x & 1)) free.push_back(x);
    // Endpoints of non-unit arrows range over all pairs of objects.
    std::size_t combos = 1;
    for (std::size_t i = 0; i < free.size(); ++i) combos *= k * k;
    rep.candidate_space += static_cast<double>(combos);
    for (std::size_t code = 0; code < combos; ++code) {
      Groupoid g(FinSet("A0", k), detail::carrier(n));
      for (std::size_t j = 0; j < k; ++j) {
        g.unit[j] = units[j];
        g.source[units[j]] = g.target[units[j]] = j;
      }
      std::size_t c = code;
      for (auto x : free) {
        g.source[x] = c % k;
        c /= k;
        g.target[x] = c % k;
        c /= k;
      }
      detail::GroupoidSearch(g, rep.survivors).run();
    }
  }
  rep.count = rep.survivors.size();
  rep.wall_ms = sw.ms();
  return rep;
}

// ------------------------------------------------------------------ frob3

struct Frob3Requirements {
  bool normal = true, dagger_symmetric = true, assoc = true;
};

namespace detail {

inline bool meets(const Frob3& t, const Frob3Requirements& req) {
  if (req.dagger_symmetric && !check_dagger_symmetric3(t)) return false;
  if (req.normal && !check_normal3(t)) return false;
  if (req.assoc && !check_assoc3(t)) return false;
  return true;
}

// Orbits of quadruples under (x,y,z,u) ↦ (u,z,y,x) and (x,y,z,u) ↦ (y,x,u,z).
inline std::vector<std::vector<std::array<std::size_t, 4>>> symmetry_orbits(std::size_t n) {
  std::vector<bool> seen(n * n * n * n, false);
  auto code = [&](const std::array<std::size_t, 4>& q) { return ((q[0] * n + q[1]) * n + q[2]) * n + q[3]; };
  std::vector<std::vector<std::array<std::size_t, 4>>> orbits;
  for (std::size_t c = 0; c < seen.size(); ++c) {
    if (seen[c]) continue;
    std::array<std::size_t, 4> q{c / (n * n * n), c / (n * n) % n, c / n % n, c % n};
    std::vector<std::array<std::size_t, 4>> orbit{q};
    seen[c] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      auto p = orbit[i];
      for (auto r : {std::array<std::size_t, 4>{p[3], p[2], p[1], p[0]}, std::array<std::size_t, 4>{p[1], p[0], p[3], p[2]}})
        if (!seen[code(r)]) {
          seen[code(r)] = true;
          orbit.push_back(r);
        }
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace detail

// n ≤ 2: all incidences. n = 3 (normal and dagger symmetric required): unions
// of symmetry orbits kept single-valued with identity loops.
inline EnumReport<Frob3> enumerate_frob3(std::size_t n, const Frob3Requirements& req = {}) {
  detail::Stopwatch sw;
  EnumReport<Frob3> rep;
  rep.kind = "frob3";
  rep.carrier_size = n;
  const auto a = detail::carrier(n);
  const std::size_t n4 = n * n * n * n;
  if (n <= 2) {
    rep.strategy = "raw";
    rep.candidate_space = std::pow(2.0, static_cast<double>(n4));
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n4); ++m) {
      Frob3 t(a);
      for (std::size_t b = 0; b < n4; ++b)
        if (m >> b & 1) t.lambda.set(b / n, b % n);
      if (detail::meets(t, req)) rep.survivors.push_back(std::move(t));
    }
  } else if (n == 3 && req.normal && req.dagger_symmetric) {
    rep.strategy = "symmetric-partial-operations";
    auto orbits = detail::symmetry_orbits(n);
    rep.candidate_space = std::pow(2.0, static_cast<double>(orbits.size()));
    // Orbits touching a loop off the diagonal can never be used.
    std::vector<bool> allowed(orbits.size(), true);
    for (std::size_t o = 0; o < orbits.size(); ++o)
      for (const auto& q : orbits[o])
        if ((q[0] == q[1] && q[2] != q[3]) || (q[1] == q[2] && q[0] != q[3])) allowed[o] = false;
    Frob3 t(a);
    auto rec = [&](auto&& self, std::size_t o) -> void {
      if (o == orbits.size()) {
        if (detail::meets(t, req)) rep.survivors.push_back(t);
        return;
      }
      self(self, o + 1);
      if (!allowed[o]) return;
      for (const auto& q : orbits[o]) {
        auto r = t.row(q[0], q[1], q[2]);
        if (!t.lambda.row_empty(r) && !t.lambda(r, q[3])) return;
      }
      for (const auto& q : orbits[o]) t.set(q[0], q[1], q[2], q[3]);
      // An orbit may map one input to two outputs by itself.
      if (is_single_valued(t.lambda)) self(self, o + 1);
      for (const auto& q : orbits[o]) t.set(q[0], q[1], q[2], q[3], false);
    };
    rec(rec, 0);
  } else {
    throw PreconditionError("enumerate_frob3: carrier size " + std::to_string(n) +
                            " needs n <= 2, or n = 3 with normal and dagger_symmetric required");
  }
  rep.count = rep.survivors.size();
  rep.wall_ms = sw.ms();
  return rep;
}

namespace detail {

// All equivalence relations on {0..n-1}, via restricted growth strings.
inline std::vector<FinRel> equivalence_relations(const FinSet& a) {
  const std::size_t n = a.size;
  std::vector<FinRel> out;
  std::vector<std::size_t> block(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      out.push_back(from_predicate(Obj(a), Obj(a), [&](std::size_t x, std::size_t y) { return block[x] == block[y]; }));
      return;
    }
    for (std::size_t b = 0; b <= used && b < n; ++b) {
      block[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace detail

inline EnumReport<Connector> enumerate_connectors(std::size_t n) {
  if (n > 3) throw PreconditionError("enumerate_connectors: carrier size " + std::to_string(n) + " exceeds the cap of 3");
  detail::Stopwatch sw;
  EnumReport<Connector> rep;
  rep.kind = "connector";
  rep.carrier_size = n;
  rep.strategy = "equivalence-pairs+tables";
  const auto a = detail::carrier(n);
  auto eqs = detail::equivalence_relations(a);
  for (const auto& R : eqs)
    for (const auto& S : eqs) {
      Connector c(a);
      c.R_eq = R;
      c.S_eq = S;
      std::vector<std::array<std::size_t, 3>> open;
      std::vector<std::vector<std::size_t>> cands;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z) {
            if (!R(x, y) || !S(y, z)) continue;
            if (y == z) c.set(x, y, z, x);
            else if (x == y) c.set(x, y, z, z);
            else {
              std::vector<std::size_t> ws;
              for (std::size_t w = 0; w < n; ++w)
                if (S(x, w) && R(z, w)) ws.push_back(w);
              open.push_back({x, y, z});
              cands.push_back(std::move(ws));
            }
          }
      double space = 1;
      for (const auto& ws : cands) space *= static_cast<double>(ws.size());
      rep.candidate_space += space;
      auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == open.size()) {
          if (check_connector(c).all()) rep.survivors.push_back(c);
          return;
        }
        for (auto w : cands[k]) {
          c.set(open[k][0], open[k][1], open[k][2], w);
          self(self, k + 1);
        }
      };
      rec(rec, 0);
    }
  rep.count = rep.survivors.size();
  rep.wall_ms = sw.ms();
  return rep;
}

// ------------------------------------------------------------ cp gap

// A subset whose C(R) factors as g†∘g although R is not closed.
inline std::optional<std::vector<bool>> find_cp_gap(const Frob2& f) {
  const std::size_t n = f.size();
  if (n > 20) throw PreconditionError("find_cp_gap: at most 20 arrows");
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<bool> s(n);
    for (std::size_t x = 0; x < n; ++x) s[x] = (m >> x & 1) != 0;
    if (cp_state(s, f).is_cp && !is_closed_subset(s, f)) return s;
  }
  return std::nullopt;
}

inline std::optional<std::vector<bool>> find_cp_gap(const Groupoid& g) { return find_cp_gap(groupoid_to_frob2(g)); }

// ------------------------------------------------------- curated suite

struct Named2 {
  std::string name;
  Frob2 f;
};

struct Named3 {
  std::string name;
  Frob3 t;
};

inline std::vector<Named2> curated_frob2() {
  using namespace examples;
  auto pair2 = pants(FinSet("P", 2));
  return {{"Z2", cyclic_group(2)},
          {"Z3", cyclic_group(3)},
          {"Z4", cyclic_group(4)},
          {"S3", s3()},
          {"D2", discrete(2)},
          {"D3", discrete(3)},
          {"pair2", groupoid_to_frob2(indiscrete_groupoid(2))},
          {"pants2", pair2},
          {"Z2xpair2", frob2_product(cyclic_group(2), pair2)},
          {"Z4xpair2", frob2_product(cyclic_group(4), pair2)}};
}

inline std::vector<Named3> curated_frob3() {
  using namespace examples;
  auto coset = restrict3(cyclic_heap(4), {1, 3}, "K").structure;
  std::vector<Named3> out{{"T2", cyclic_heap(2)},
                          {"T3", cyclic_heap(3)},
                          {"T4", cyclic_heap(4)},
                          {"Tproj2", tproj(2)},
                          {"Tproj3", tproj(3)},
                          {"Tproj2_mirror", tproj_mirror(2)},
                          {"pants3_2x2", pants3(FinSet("X", 2), FinSet("Y", 2))},
                          {"coset13_Z4", coset},
                          {"heap_S3", heap_of_group(s3())},
                          {"discrete3", connector_to_frob3(discrete_connector(3))},
                          {"T2xTproj2", product3(cyclic_heap(2), tproj(2))}};
  for (const auto& f : curated_frob2())
    if (f.f.size() <= 4) out.push_back({"two_to_three(" + f.name + ")", two_to_three(f.f)});
  return out;
}

// ------------------------------------------------------ roundtrip sweep

struct SweepReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline SweepReport sweep_roundtrips(const std::vector<Named2>& twos, const std::vector<Named3>& threes) {
  SweepReport rep;
  auto expect = [&](bool cond, const std::string& what) {
    ++rep.checks;
    if (!cond) rep.failures.push_back(what);
  };
  auto guarded = [&](const std::string& what, const std::function<bool()>& fn) {
    try {
      expect(fn(), what);
    } catch (const Error& e) {
      expect(false, what + ": " + e.what());
    }
  };
  for (const auto& [name, f] : twos) {
    auto r = check_frob2(f);
    if (r.all())
      guarded(name + ": groupoid_to_frob2(frob2_to_groupoid(f)) = f",
              [&] { return groupoid_to_frob2(frob2_to_groupoid(f)) == f; });
    if (r.F1_unit_left && r.F2_unit_right && r.F3_assoc && r.F5_frobenius && is_symmetric(f))
      guarded(name + ": three_to_two(two_to_three(f), U) = f", [&] { return three_to_two(two_to_three(f), f.unit) == f; });
  }
  for (const auto& [name, t] : threes) {
    auto r = check_frob3(t);
    if (r.assoc && r.dagger_symmetric && r.normal) {
      guarded(name + ": connector_to_frob3(frob3_to_connector(t)) = t",
              [&] { return connector_to_frob3(frob3_to_connector(t)) == t; });
      guarded(name + ": frob3_to_connector(connector_to_frob3(c)) = c", [&] {
        auto c = frob3_to_connector(t);
        return frob3_to_connector(connector_to_frob3(c)) == c;
      });
    }
    if (r.frobenius())
      for (const auto& e : unit_candidates(t)) {
        guarded(name + ": two_to_three(three_to_two(t, E)) = t", [&] { return two_to_three(three_to_two(t, e)) == t; });
        guarded(name + ": special <=> normal <=> left idem <=> right idem",
                [&] { return special_normal_equivalences(t, e).agree(); });
      }
  }
  return rep;
}

}  // namespace frobrel::search
