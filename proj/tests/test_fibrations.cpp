#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "multikat/errors.hpp"
#include "multikat/fibrations.hpp"

using namespace multikat;

namespace {

using Figure = Torus::Figure;

CheckBounds arity(std::size_t a, std::size_t objects = 0) {
  CheckBounds b;
  b.arity_bound = a;
  b.max_objects = objects;
  return b;
}

// componentwise OR / AND on pairs of bits, encoded 2a + b
std::size_t or2(std::size_t x, std::size_t y) { return x | y; }
std::size_t scale2(std::size_t l, std::size_t x) { return l == 0 ? 0 : x; }

Figure cells(const Torus& t, std::initializer_list<std::pair<std::size_t, std::size_t>> xy) {
  Figure f = 0;
  for (auto [x, y] : xy) f |= Figure{1} << (y * t.n() + x);
  return f;
}

}  // namespace

TEST_CASE("power module B² has the expected tables") {
  const auto m = power_module(boolean_rig(), 2);
  REQUIRE(m.size() == 4);
  CHECK(m.carrier.carrier == std::vector<std::string>{"(0,0)", "(0,1)", "(1,0)", "(1,1)"});
  CHECK(check_module(m).passed());
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) CHECK(m.carrier.op(x, y) == or2(x, y));
    for (std::size_t l = 0; l < 2; ++l) CHECK(m.act(l, x) == scale2(l, x));
  }
}

TEST_CASE("indexed monoid checks") {
  const auto m = power_module(boolean_rig(), 2);
  CHECK(check_indexed_monoid(module_indexed_monoid(m)).passed());
  auto t = std::make_shared<const Torus>(3);
  CHECK(check_indexed_monoid(figure_fibration(t)).passed());
  CHECK(check_indexed_monoid(tangram_fibration(t)).passed());
  CHECK(check_indexed_monoid(cover_fibration(t)).passed());

  auto broken = module_indexed_monoid(m);
  broken.action = [](ArrowId l, std::uint64_t x) { return l == 0 ? std::uint64_t{1} : x; };
  const auto report = check_indexed_monoid(broken);
  REQUIRE_FALSE(report.passed());
  CHECK(report.violations()[0].law == "action unit");

  auto not_monotone = cover_fibration(t);
  not_monotone.fibers[0].op = [](std::uint64_t a, std::uint64_t b) { return a ^ b; };
  CHECK_FALSE(check_indexed_monoid(not_monotone).passed());
}

TEST_CASE("Tangram union: commutative, unit ∅, whole grid absorbing") {
  auto t = std::make_shared<const Torus>(3);
  const auto fib = tangram_fibration(t).fibers[0];
  const Figure all = t->full();
  for (Figure a = 0; a <= all; ++a) {
    CHECK(fib.op(a, 0) == a);
    CHECK(fib.op(all, a) == all);
    for (Figure b = 0; b <= all; b += 7) {
      CHECK(fib.op(a, b) == fib.op(b, a));
      if ((a & b) != 0) CHECK(fib.op(a, b) == all);
    }
  }
}

TEST_CASE("torus isometries") {
  // 3×3: the isometries of the torus are exactly the automorphisms of its
  // neighbour graph (the rook graph K3 □ K3), counted by brute force.
  Torus t(3);
  CHECK(t.group_size() == 72);
  CHECK(check_category(*t.group()).passed());
  auto adjacent = [](std::size_t a, std::size_t b) {
    return a != b && (a % 3 == b % 3 || a / 3 == b / 3);
  };
  std::vector<std::size_t> p = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::set<std::vector<std::size_t>> autos;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < 9 && ok; ++a)
      for (std::size_t b = 0; b < 9 && ok; ++b) ok = adjacent(a, b) == adjacent(p[a], p[b]);
    if (ok) autos.insert(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::set<std::vector<std::size_t>> ours;
  for (ArrowId g = 0; g < t.group_size(); ++g) ours.insert(t.perm(g));
  CHECK(ours == autos);

  Torus t4(4);
  CHECK(t4.group_size() == 128);
  CHECK(t4.group()->arrow(0).name == "e");
  CHECK(check_category(*t4.group()).passed());
  CHECK_THROWS_AS(Torus(9), SchemaError);
  CHECK(Torus(8).full() == ~std::uint64_t{0});
  CHECK_THROWS_AS(figure_fibration(std::make_shared<const Torus>(8)), EnumerationOverflow);
}

TEST_CASE("figure parsing and naming") {
  Torus t(4);
  const Figure domino = cells(t, {{0, 0}, {1, 0}});
  CHECK(t.parse_figure("domino") == domino);
  CHECK(t.figure_name(domino) == "{(0,0),(1,0)}");
  CHECK(t.parse_figure("{(0,0),(1,0)}") == domino);
  CHECK(t.parse_figure(" {(1,0), (0,0)} ") == domino);
  CHECK(t.parse_figure("{}") == Figure{0});
  CHECK_FALSE(t.parse_figure("{(4,0)}").has_value());
  CHECK_FALSE(t.parse_figure("square").has_value());
}

TEST_CASE("module fibration M̂ of the Boolean module B²") {
  const auto mf = module_fibration(power_module(boolean_rig(), 2));
  const auto& total = *mf.groth.total;
  CHECK(total.object_count() == 4);
  CHECK(check_multicategory(total, arity(3)).passed());
  CHECK(check_functor(mf.groth.proj, arity(3)).passed());
  CHECK(check_unique_lifts(total, arity(3)).passed());
  CHECK(check_fp(mf.total, arity(3)).passed());
  CHECK(check_fp_functor(mf.proj, arity(3)).passed());

  // ⟨⟩ → unit only
  for (std::uint64_t a = 0; a < 4; ++a) {
    CHECK(total.hom({}, total.object(0, a), 10).size() == (a == 0 ? 1u : 0u));
  }
}

TEST_CASE("M̂ hom-sets are the true linear combinations") {
  const auto mf = module_fibration(power_module(boolean_rig(), 2));
  const auto& total = *mf.groth.total;
  for (std::size_t n = 0; n <= 3; ++n) {
    std::vector<std::size_t> elems(n, 0);
    while (true) {
      ObjList dom;
      for (auto e : elems) dom.push_back(total.object(0, e));
      for (std::size_t a = 0; a < 4; ++a) {
        std::size_t combos = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
          std::size_t sum = 0;
          for (std::size_t i = 0; i < n; ++i) sum = or2(sum, scale2(mask >> (n - 1 - i) & 1u, elems[i]));
          combos += sum == a;
        }
        CHECK(total.hom(dom, total.object(0, a), 100).size() == combos);
      }
      std::size_t i = n;
      while (i > 0 && ++elems[i - 1] == 4) elems[--i] = 0;
      if (i == 0) break;
    }
  }
}

TEST_CASE("span queries") {
  const auto mf = module_fibration(power_module(boolean_rig(), 2));
  const auto yes = span_query(mf, {2, 1}, 3);  // ⟨(1,0),(0,1)⟩ ⊢ (1,1)
  CHECK(yes.holds);
  CHECK(yes.witnesses == std::vector<std::vector<ArrowId>>{{1, 1}});
  const auto empty = span_query(mf, {}, 0);
  CHECK(empty.holds);
  CHECK(empty.witnesses == std::vector<std::vector<ArrowId>>{{}});
  CHECK_FALSE(span_query(mf, {}, 3).holds);
  const auto many = span_query(mf, {3, 3}, 3, 1);
  CHECK(many.holds);
  CHECK(many.truncated);
  CHECK(many.witnesses.size() == 1);
}

TEST_CASE("fibers are recovered by pulling back along an object") {
  const auto m = power_module(boolean_rig(), 2);
  const auto mf = module_fibration(m);
  const auto ex = extract_fiber(*mf.groth.total, 0);
  CHECK(ex.monoid == tabulate_fiber(mf.groth.total->indexed().fibers[0]));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) CHECK(ex.order[a * 4 + b] == (a == b));

  auto t = std::make_shared<const Torus>(2);
  const auto cover = grothendieck(cover_fibration(t));
  const auto cx = extract_fiber(*cover.total, 0);
  for (Figure a = 0; a < 16; ++a) {
    for (Figure b = 0; b < 16; ++b) {
      CHECK(cx.monoid.op(a, b) == (a | b));
      CHECK(cx.order[a * 16 + b] == ((b & ~a) == 0));
    }
  }
  CHECK(cx.monoid.unit == 0);
}

TEST_CASE("figure fibration: unary arrows are the symmetry groupoid") {
  auto t = std::make_shared<const Torus>(3);
  const auto g = grothendieck(figure_fibration(t));
  const auto& total = *g.total;
  const Figure a = cells(*t, {{0, 0}, {1, 0}, {1, 1}});
  const auto from = total.arrows_from({total.object(0, a)}, 1000);
  CHECK(from.size() == t->group_size());
  for (const auto& f : from) {
    CHECK(total.elem_of(f.cod) == t->image(static_cast<ArrowId>(f.label[0]), a));
  }
  // identity fixes every figure
  for (Figure b = 0; b <= t->full(); ++b) CHECK(t->image(0, b) == b);

  const Figure b = cells(*t, {{2, 2}});
  for (ArrowId l1 = 0; l1 < t->group_size(); l1 += 5) {
    for (ArrowId l2 = 0; l2 < t->group_size(); l2 += 3) {
      const Figure c = t->image(l1, a) | t->image(l2, b);
      const MultiArrow f{{total.object(0, a), total.object(0, b)}, total.object(0, c),
                         {static_cast<std::int64_t>(l1), static_cast<std::int64_t>(l2)}};
      CHECK(total.contains(f));
      CHECK(total.lifts(f.dom, std::vector<ArrowId>{l1, l2}, 0).size() == 1);
    }
  }
}

TEST_CASE("figure fibration on the 2×2 torus passes the kernel checks") {
  auto t = std::make_shared<const Torus>(2);
  const auto g = grothendieck(figure_fibration(t));
  CHECK(check_multicategory(*g.total, arity(2, 3)).passed());
  CHECK(check_functor(g.proj, arity(2, 3)).passed());
  CHECK(check_unique_lifts(*g.total, arity(3)).passed());
  const auto cover = grothendieck(cover_fibration(t));
  CHECK(check_multicategory(*cover.total, arity(2, 3)).passed());
  CHECK(check_functor(cover.proj, arity(2, 3)).passed());
}

TEST_CASE("figure fibration on the 3×3 torus: sampled lifts") {
  auto t = std::make_shared<const Torus>(3);
  const auto g = grothendieck(figure_fibration(t));
  CHECK(check_unique_lifts(*g.total, arity(2, 4)).passed());
  CHECK(check_functor(g.proj, arity(1, 6)).passed());
}

TEST_CASE("posetal lifts are not unique") {
  auto t = std::make_shared<const Torus>(2);
  const auto cover = grothendieck(cover_fibration(t));
  const auto report = check_unique_lifts(*cover.total, arity(1));
  CHECK_FALSE(report.passed());
}

TEST_CASE("Tangram: two unit squares tile a domino") {
  Torus t(4);
  const Figure sq = cells(t, {{0, 0}});
  const Figure domino = cells(t, {{0, 0}, {1, 0}});
  const auto r = tangram_entails(t, {sq, sq}, domino);
  REQUIRE(r.holds);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(t.group()->arrow(r.witnesses[0][0]).name == "e");
  CHECK(t.group()->arrow(r.witnesses[0][1]).name == "t(1,0)");
  for (const auto& w : r.witnesses) {
    const Figure a = t.image(w[0], sq), b = t.image(w[1], sq);
    CHECK((a & b) == 0);
    CHECK((a | b) == domino);
  }
  // a domino cannot be tiled by three squares, nor by one
  CHECK_FALSE(tangram_entails(t, {sq, sq, sq}, domino).holds);
  CHECK_FALSE(tangram_entails(t, {sq}, domino).holds);
  // overlaps only ever reach the absorbing element
  CHECK(tangram_entails(t, {domino, domino}, t.full()).holds);
  CHECK(tangram_entails(t, {}, 0).holds);
}

TEST_CASE("cover entailment") {
  Torus t(4);
  const Figure l = cells(t, {{0, 0}, {1, 0}, {0, 1}});
  const auto self = cover_entails(t, {l}, l);
  CHECK(self.holds);
  CHECK(self.witnesses.front() == std::vector<ArrowId>{0});
  CHECK(cover_entails(t, {}, 0).holds);
  CHECK_FALSE(cover_entails(t, {}, l).holds);
  const Figure sq = cells(t, {{0, 0}});
  CHECK(cover_entails(t, {sq, sq, sq}, l).holds);
  CHECK_FALSE(cover_entails(t, {sq, sq}, l).holds);
  const Figure domino = cells(t, {{0, 0}, {1, 0}});
  CHECK(cover_entails(t, {domino, domino}, l).holds);  // overlapping cover
}

TEST_CASE("Tangram entailment implies cover entailment on sampled queries") {
  Torus t(3);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Figure> fig(0, t.full());
  std::uniform_int_distribution<std::size_t> count(0, 3);
  std::size_t tangram_true = 0;
  for (int q = 0; q < 3000; ++q) {
    std::vector<Figure> pieces(count(rng));
    for (auto& p : pieces) p = fig(rng) & fig(rng) & fig(rng);
    Figure target = 0;
    // half the targets are built from placed pieces so that some queries hold
    if (q % 2 == 0) {
      for (auto p : pieces) target |= t.image(rng() % t.group_size(), p);
    } else {
      target = fig(rng);
    }
    const bool tg = tangram_entails(t, pieces, target, 0).holds;
    tangram_true += tg;
    if (tg && target != t.full()) CHECK(cover_entails(t, pieces, target, 0).holds);
  }
  CHECK(tangram_true > 0);
}

TEST_CASE("entailment searches agree with M̂ hom-sets on the 2×2 torus") {
  auto t = std::make_shared<const Torus>(2);
  const auto tangram = grothendieck(tangram_fibration(t));
  const auto cover = grothendieck(cover_fibration(t));
  for (std::size_t n = 0; n <= 2; ++n) {
    std::vector<Figure> pieces(n, 0);
    while (true) {
      ObjList dom;
      for (auto p : pieces) dom.push_back(ObjId{p});
      for (Figure a = 0; a < 16; ++a) {
        const auto th = tangram.total->hom(dom, ObjId{a}, 1000);
        const auto te = tangram_entails(*t, pieces, a);
        CHECK(te.holds == !th.empty());
        CHECK(te.witnesses.size() == th.size());
        const auto ch = cover.total->hom(dom, ObjId{a}, 1000);
        const auto ce = cover_entails(*t, pieces, a);
        CHECK(ce.holds == !ch.empty());
        CHECK(ce.witnesses.size() == ch.size());
      }
      std::size_t i = n;
      while (i > 0 && ++pieces[i - 1] == 16) pieces[--i] = 0;
      if (i == 0) break;
    }
  }
}
