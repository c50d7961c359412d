#include "doctest.h"

#include <set>

#include "multikat/cartesian.hpp"
#include "multikat/errors.hpp"

using namespace multikat;

namespace {

std::vector<FinRig> builtin_rigs() {
  return {boolean_rig(), z2_ring(), truncated_tropical_rig(3)};
}

std::shared_ptr<const SetxMulticategory> sets_upto_two() {
  return rep_of_finsets({{"1", {"*"}}, {"2", {"0", "1"}}});
}

CheckBounds arity(std::size_t a) {
  CheckBounds b;
  b.arity_bound = a;
  return b;
}

}  // namespace

TEST_CASE("index map validation") {
  const ObjId x{0}, y{1};
  CHECK_NOTHROW(validate(IndexMap{{x, y, x}, {y, x}, {1, 0, 1}}));
  CHECK_THROWS_AS(validate(IndexMap{{x, y}, {y, x}, {0, 1}}), ObjectMismatch);
  CHECK(exchange(x, y).is_bijection());
  CHECK_FALSE(contraction(x, 2).is_bijection());
}

TEST_CASE("block_sum") {
  const ObjId x{0}, y{1};
  const IndexMap p = contraction(x, 2);
  const IndexMap q{{}, {y}, {}};
  const std::vector<IndexMap> ps = {p, q};
  const IndexMap s = block_sum(ps);
  CHECK(s.map == std::vector<std::size_t>{0, 0});
  CHECK(s.src == ObjList{x, x});
  CHECK(s.tgt == ObjList{x, y});

  const std::vector<IndexMap> ids = {identity_index_map({x, y}), identity_index_map({y})};
  CHECK(block_sum(ids) == identity_index_map({x, y, y}));

  const IndexMap r = exchange(x, y);
  const std::vector<IndexMap> qr = {q, r};
  const std::vector<IndexMap> pq = {p, q};
  const std::vector<IndexMap> right = {p, block_sum(qr)};
  const std::vector<IndexMap> left = {block_sum(pq), r};
  CHECK(block_sum(right) == block_sum(left));
}

TEST_CASE("derived map on the worked example") {
  // A, B, C and block objects A1, A2, B1, B2, C1, C2.
  const ObjId a{0}, b{1}, c{2}, a1{3}, a2{4}, b1{5}, b2{6}, c1{7}, c2{8};
  const IndexMap p{{a, b, a}, {b, a, c}, {1, 0, 1}};
  validate(p);
  const IndexMap pp = derived_map(p, {{b1, b2}, {a1, a2}, {c1, c2}});
  validate(pp);
  std::vector<std::size_t> one_based;
  for (auto j : pp.map) one_based.push_back(j + 1);
  CHECK(one_based == std::vector<std::size_t>{3, 4, 1, 2, 3, 4});
  CHECK(pp.src == ObjList{a1, a2, b1, b2, a1, a2});
  CHECK(describe(pp) == "6→6 1↦3,2↦4,3↦1,4↦2,5↦3,6↦4");

  CHECK(derived_map(identity_index_map({a, b}), {{a1}, {b1, b2}}) ==
        identity_index_map({a1, b1, b2}));
  const IndexMap single = derived_map(p, {{b}, {a}, {c}});
  CHECK(single.map == p.map);
}

TEST_CASE("index maps out of a list") {
  const std::vector<ObjId> objs = {ObjId{0}, ObjId{1}};
  // From ⟨X⟩: 1 map to each length-1 list over X, 2·2 maps to length 2 (one slot forced).
  const auto maps = index_maps_from({ObjId{0}}, objs, 2);
  CHECK(maps.size() == 1 + 2 * 2);
  for (const auto& p : maps) CHECK_NOTHROW(validate(p));
  // From ⟨⟩: one map to every list.
  CHECK(index_maps_from({}, objs, 2).size() == 1 + 2 + 4);
  CHECK(index_maps_from({ObjId{0}, ObjId{1}}, objs, 3, true).size() == 2);
}

TEST_CASE("rig operad action: p⟨α,β,γ⟩ = ⟨α+β, 0, γ⟩") {
  for (const auto& r : builtin_rigs()) {
    const auto cm = rig_operad(r);
    auto cone = std::dynamic_pointer_cast<const CoconeMulticategory>(cm.multicat);
    const ObjId star{0};
    const IndexMap p{{star, star, star}, {star, star, star}, {0, 0, 2}};
    for (std::size_t a = 0; a < r.size(); ++a) {
      for (std::size_t b = 0; b < r.size(); ++b) {
        for (std::size_t c = 0; c < r.size(); ++c) {
          const auto out = cm.act(p, cone->arrow({a, b, c}, 0));
          CHECK(CoconeMulticategory::legs(out) ==
                std::vector<ArrowId>{r.add.table[a * r.size() + b], r.zero(), c});
        }
      }
    }
  }
}

TEST_CASE("preadditive generators") {
  const auto m = boolean_matrix_category();
  const auto cm = fp_of_preadditive(m);
  auto cone = std::dynamic_pointer_cast<const CoconeMulticategory>(cm.multicat);
  const auto& base = *m.base;
  const ObjIndex one = 0, two = 1;
  const auto f = *base.find_arrow("[1;0]");  // 1 → 2
  const auto g = base.identity(two);
  const auto sf = cm.act(exchange(ObjId{one}, ObjId{two}), cone->arrow({f, g}, two));
  CHECK(CoconeMulticategory::legs(sf) == std::vector<ArrowId>{g, f});
  const auto z = cm.act(contraction(ObjId{two}, 0), cone->arrow({}, one));
  CHECK(CoconeMulticategory::legs(z) == std::vector<ArrowId>{m.zero_arrow(two, one)});
  const auto d = cm.act(weakening(ObjId{one}, ObjId{two}, 0), cone->arrow({f}, two));
  CHECK(CoconeMulticategory::legs(d) == std::vector<ArrowId>{f, m.zero_arrow(two, two)});
}

TEST_CASE("Set× action: (pf)(x,y,z) = f(x,x,z)") {
  auto s = rep_of_finsets({{"2", {"0", "1"}}});
  const auto cm = fp_of_finsets(s);
  const ObjId two{0};
  const IndexMap p{{two, two, two}, {two, two, two}, {0, 0, 2}};
  std::size_t tables = 0;
  for (const auto& f : s->hom({two, two, two}, two, 1000)) {
    ++tables;
    const auto pf = cm.act(p, f);
    for (std::size_t x = 0; x < 2; ++x) {
      for (std::size_t y = 0; y < 2; ++y) {
        for (std::size_t z = 0; z < 2; ++z) {
          CHECK(pf.label[x * 4 + y * 2 + z] == f.label[x * 4 + x * 2 + z]);
        }
      }
    }
  }
  CHECK(tables == 256);
}

TEST_CASE("Set× generators are diagonals and projections") {
  auto s = sets_upto_two();
  const auto cm = fp_of_finsets(s);
  const ObjId one{0}, two{1};
  for (const auto& f : s->hom({two, two}, two, 100)) {
    const auto d = cm.act(contraction(two, 2), f);
    for (std::size_t x = 0; x < 2; ++x) CHECK(d.label[x] == f.label[x * 2 + x]);
  }
  for (const auto& f : s->hom({two}, two, 100)) {
    const auto w = cm.act(weakening(two, one, 0), f);  // f∘π_1 : 2×1 → 2
    CHECK(w.label == f.label);
    const auto w2 = cm.act(weakening(one, two, 1), f);  // f∘π_2 : 1×2 → 2
    CHECK(w2.label == f.label);
  }
  for (const auto& x : s->hom({}, two, 100)) {
    const auto c = cm.act(contraction(two, 0), x);  // x∘!
    CHECK(c.label == Label{x.label[0], x.label[0]});
  }
}

TEST_CASE("check_fp passes on the built-in structures") {
  for (const auto& r : builtin_rigs()) {
    CHECK(check_fp(rig_operad(r)).passed());
  }
  const auto mat = fp_of_preadditive(boolean_matrix_category());
  CHECK(check_fp(mat, arity(2)).passed());
  const auto sx = fp_of_finsets(sets_upto_two());
  CHECK(check_fp(sx, arity(2)).passed());
  CHECK(check_fp(sx, arity(2), true).passed());
}

TEST_CASE("a non-commutative sum is caught through the exchange") {
  auto pre = rig_to_preadditive(truncated_tropical_rig(3));
  const std::size_t n = pre.base->arrow_count();
  pre.sum[0 * n + 1] = 1;  // 0 + 1 := 1, while 1 + 0 = 0
  const auto report = check_fp(fp_of_preadditive(pre), arity(2));
  REQUIRE_FALSE(report.passed());
  bool exchange_seen = false;
  for (const auto& v : report.violations()) {
    exchange_seen |= v.law == "act composition" && v.instance.find("2→2 1↦2,2↦1") != std::string::npos;
  }
  CHECK(exchange_seen);
}

TEST_CASE("action does not depend on a factorization of p") {
  for (const auto& r : builtin_rigs()) {
    const auto cm = rig_operad(r);
    auto cone = std::dynamic_pointer_cast<const CoconeMulticategory>(cm.multicat);
    const ObjId x{0};
    const std::vector<ObjId> objs = {x};
    for (std::size_t n = 0; n <= 3; ++n) {
      for (const auto& f : cone->hom(ObjList(n, x), x, 1000)) {
        for (const auto& p : index_maps_from(f.dom, objs, 3)) {
          // p = i ∘ s with s onto its image (in order of first use) and i injective.
          std::vector<std::size_t> image;
          IndexMap s{p.src, {}, {}};
          for (auto j : p.map) {
            auto it = std::find(image.begin(), image.end(), j);
            if (it == image.end()) {
              image.push_back(j);
              it = image.end() - 1;
            }
            s.map.push_back(static_cast<std::size_t>(it - image.begin()));
          }
          s.tgt = ObjList(image.size(), x);
          const IndexMap i{s.tgt, p.tgt, image};
          CHECK(cm.act(p, f) == cm.act(i, cm.act(s, f)));
          // and s itself through a sequence of binary contractions
          MultiArrow step = f;
          ObjList cur = f.dom;
          std::vector<std::size_t> where = s.map;
          while (cur.size() > image.size()) {
            // merge the last position into the first one sharing its image
            const std::size_t last = cur.size() - 1;
            std::size_t first = 0;
            while (where[first] != where[last]) ++first;
            if (first == last) {
              // last is alone: rotate it to the front with a bijection
              IndexMap rot{cur, cur, {}};
              for (std::size_t k = 0; k < cur.size(); ++k) rot.map.push_back((k + 1) % cur.size());
              step = cm.act(rot, step);
              std::vector<std::size_t> w(cur.size());
              for (std::size_t k = 0; k < cur.size(); ++k) w[rot.map[k]] = where[k];
              where = w;
              continue;
            }
            IndexMap merge{cur, ObjList(cur.size() - 1, x), {}};
            for (std::size_t k = 0; k < last; ++k) merge.map.push_back(k);
            merge.map.push_back(first);
            step = cm.act(merge, step);
            cur.pop_back();
            where.pop_back();
          }
          IndexMap arrange{cur, ObjList(image.size(), x), where};
          CHECK(cm.act(arrange, step) == cm.act(s, f));
        }
      }
    }
  }
}

TEST_CASE("check_fp_functor: identity and additive functors pass") {
  const auto cm = rig_operad(truncated_tropical_rig(3));
  CHECK(check_fp_functor(FpFunctor{identity_multifunctor(cm.multicat), cm, cm}).passed());
  // h(a) = min(2a, 3) is a rig endomorphism of T3
  auto cat = std::dynamic_pointer_cast<const CoconeMulticategory>(cm.multicat)->base_ptr();
  FinFunctor h{cat, cat, {0}, {0, 2, 3, 3}};
  REQUIRE(check_fin_functor(h).passed());
  auto cone = std::dynamic_pointer_cast<const CoconeMulticategory>(cm.multicat);
  CHECK(check_fp_functor(FpFunctor{cocone_functor(h, cone, cone), cm, cm}).passed());
}

TEST_CASE("a non-additive functor is found by search and fails at ν_2") {
  bool found = false;
  for (const auto& r : builtin_rigs()) {
    for (const auto& s : builtin_rigs()) {
      const auto rc = rig_category(r);
      const auto sc = rig_category(s);
      std::vector<ArrowId> h(r.size(), 0);
      while (!found) {
        FinFunctor f{rc, sc, {0}, h};
        const bool zero_ok = h[r.zero()] == s.zero();
        if (zero_ok && check_fin_functor(f).passed()) {
          bool additive = true;
          for (std::size_t a = 0; a < r.size(); ++a) {
            for (std::size_t b = 0; b < r.size(); ++b) {
              additive &= h[r.plus(a, b)] == s.plus(h[a], h[b]);
            }
          }
          if (!additive) {
            const auto src = rig_operad(r);
            const auto tgt = rig_operad(s);
            const auto report = check_fp_functor(
                FpFunctor{cocone_functor(f, std::dynamic_pointer_cast<const CoconeMulticategory>(src.multicat),
                                         std::dynamic_pointer_cast<const CoconeMulticategory>(tgt.multicat)),
                          src, tgt},
                arity(2));
            REQUIRE_FALSE(report.passed());
            bool at_nu2 = false;
            for (const auto& v : report.violations()) at_nu2 |= v.instance.find("2→1 1↦1,2↦1") != std::string::npos;
            CHECK(at_nu2);
            found = true;
          }
        }
        std::size_t i = h.size();
        while (i > 0 && ++h[i - 1] == s.size()) h[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("cMon of a preadditive C_▶ recovers the addition") {
  const auto m = boolean_matrix_category();
  const auto cm = fp_of_preadditive(m);
  const auto cmon = cmon_category(cm);
  CHECK(check_preadditive(cmon.category).passed());
  REQUIRE(cmon.monoids.objects.size() == m.base->object_count());
  const auto& cat = *cmon.category.base;
  REQUIRE(cat.arrow_count() == m.base->arrow_count());
  for (ArrowId a = 0; a < cat.arrow_count(); ++a) {
    for (ArrowId b = 0; b < cat.arrow_count(); ++b) {
      if (cat.dom(a) != cat.dom(b) || cat.cod(a) != cat.cod(b)) continue;
      const auto la = static_cast<ArrowId>(cmon.monoids.morphisms[a].label[0]);
      const auto lb = static_cast<ArrowId>(cmon.monoids.morphisms[b].label[0]);
      const auto sum = static_cast<ArrowId>(cmon.monoids.morphisms[cmon.category.add(a, b)].label[0]);
      CHECK(sum == m.add(la, lb));
    }
  }
  for (ObjIndex x = 0; x < 2; ++x) {
    for (ObjIndex y = 0; y < 2; ++y) {
      const auto z = cmon.category.zero_arrow(x, y);
      CHECK(static_cast<ArrowId>(cmon.monoids.morphisms[z].label[0]) == m.zero_arrow(x, y));
    }
  }
}

TEST_CASE("cMon(Set× on {0,1})") {
  auto s = rep_of_finsets({{"2", {"0", "1"}}});
  const auto cmon = cmon_category(fp_of_finsets(s));
  std::set<Label> mults;
  for (const auto& mon : cmon.monoids.objects) mults.insert(mon.mult.label);
  CHECK(mults.count(Label{0, 1, 1, 1}) == 1);
  CHECK(mults.count(Label{0, 0, 0, 1}) == 1);
  CHECK(mults.size() == 4);  // xor and xnor are commutative too
  CHECK(check_preadditive(cmon.category).passed());
}

TEST_CASE("module axioms") {
  CHECK(check_module(regular_module(boolean_rig())).passed());
  CHECK(check_module(regular_module(truncated_tropical_rig(3))).passed());
  CHECK(check_module(regular_module(z2_ring())).passed());
  auto bad = regular_module(boolean_rig());
  bad.scalar[0 * 2 + 1] = 1;  // 0̄1 := 1
  CHECK_FALSE(check_module(bad).passed());
}

TEST_CASE("module to fp-functor: ⟨α,β⟩ ↦ αx ∨ βy") {
  const auto r = boolean_rig();
  const auto m = regular_module(r);
  const auto fp = module_to_fp(m);
  CHECK(check_fp_functor(fp).passed());
  auto cone = std::dynamic_pointer_cast<const CoconeMulticategory>(fp.source.multicat);
  for (ArrowId a = 0; a < 2; ++a) {
    for (ArrowId b = 0; b < 2; ++b) {
      const auto img = fp.functor.on_arrows(cone->arrow({a, b}, 0));
      for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
          CHECK(static_cast<std::size_t>(img.label[x * 2 + y]) == ((a & x) | (b & y)));
        }
      }
    }
  }
  CHECK(transpose_module(fp) == m);
}

TEST_CASE("the zero module gives a constant functor") {
  const auto r = boolean_rig();
  RigModule zero{r, CommMonoid{"0", {"0"}, {0}, 0}, {0, 0}};
  const auto fp = module_to_fp(zero);
  CHECK(check_fp_functor(fp).passed());
  auto cone = std::dynamic_pointer_cast<const CoconeMulticategory>(fp.source.multicat);
  CHECK(fp.functor.on_arrows(cone->arrow({1, 0, 1}, 0)).label == Label{0});
  CHECK(transpose_module(fp) == zero);
}

TEST_CASE("module round trips over the tropical rig") {
  const auto r = truncated_tropical_rig(3);
  const auto m = regular_module(r);
  const auto fp = module_to_fp(m);
  CHECK(check_fp_functor(fp, arity(2)).passed());
  CHECK(transpose_module(fp) == m);
}

TEST_CASE("monoid enumeration counts") {
  // Brute-force counts of labeled monoids on 1, 2, 3 elements.
  auto brute = [](std::size_t n, bool comm) {
    std::size_t count = 0;
    std::size_t cells = n * n;
    std::vector<std::size_t> t(cells, 0);
    while (true) {
      bool assoc = true;
      for (std::size_t a = 0; a < n && assoc; ++a)
        for (std::size_t b = 0; b < n && assoc; ++b)
          for (std::size_t c = 0; c < n && assoc; ++c)
            assoc = t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]];
      bool commutes = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) commutes &= t[a * n + b] == t[b * n + a];
      if (assoc && (!comm || commutes)) {
        for (std::size_t u = 0; u < n; ++u) {
          bool unit = true;
          for (std::size_t a = 0; a < n; ++a) unit &= t[u * n + a] == a && t[a * n + u] == a;
          count += unit;
        }
      }
      std::size_t i = cells;
      while (i > 0 && ++t[i - 1] == n) t[--i] = 0;
      if (i == 0) break;
    }
    return count;
  };
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(enumerate_monoids(n).size() == brute(n, false));
    CHECK(enumerate_monoids(n, true).size() == brute(n, true));
  }
}

TEST_CASE("plain functors R_▶ → Set× agree with the generic search") {
  const auto r = boolean_rig();
  const auto src = rig_operad(r);
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto candidates = enumerate_rig_functors(r, n, &src);
    std::vector<std::string> elements;
    for (std::size_t i = 0; i < n; ++i) elements.push_back(std::to_string(i));
    auto s = rep_of_finsets({FinSetObj{"X", elements}});
    const auto found = search_functors(*src.multicat, *s, [](ObjId) { return ObjId{0}; }, arity(3), false);
    CHECK(candidates.size() == found.maps.size());
    for (const auto& c : candidates) CHECK(check_functor(c.functor, arity(3)).passed());
  }
}

TEST_CASE("fp-functors and modules correspond on small carriers") {
  const auto r = boolean_rig();
  const auto src = rig_operad(r);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<RigModule> from_functors;
    for (const auto& f : enumerate_rig_functors(r, n, &src)) {
      if (check_fp_functor(f, arity(2)).passed()) from_functors.push_back(transpose_module(f));
    }
    auto modules = enumerate_modules(r, n);
    CHECK(from_functors.size() == modules.size());
    for (const auto& m : modules) {
      CHECK(std::count(from_functors.begin(), from_functors.end(), m) == 1);
    }
  }
}
