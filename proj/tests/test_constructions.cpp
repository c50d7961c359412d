#include "doctest.h"

#include <cmath>
#include <set>

#include "multikat/constructions.hpp"
#include "multikat/errors.hpp"

using namespace multikat;

namespace {

std::shared_ptr<const FinCategory> two_obj() {
  return std::make_shared<const FinCategory>(two_object_category());
}

// Independent count of C(x, y) straight from the arrow list.
std::size_t count_arrows(const FinCategory& c, ObjIndex x, ObjIndex y) {
  std::size_t n = 0;
  for (const auto& a : c.arrows()) n += (a.dom == x && a.cod == y);
  return n;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("cocone composition concatenates post-composed legs") {
  auto cat = two_obj();
  auto c = discrete_cocone(cat);
  const auto s = *cat->find_arrow("s"), f = *cat->find_arrow("f"), g = *cat->find_arrow("g");
  const auto id_x = cat->identity(0), id_y = cat->identity(1);
  // ⟨λ,μ,ν⟩ = ⟨s, f, f⟩ : ⟨Y, X, X⟩ → Y
  const auto outer = c->arrow({s, f, f}, 1);
  const auto a1 = c->arrow({f, s}, 1);  // ⟨α,β⟩ into Y
  const auto a2 = c->arrow({}, 0);      // ⟨⟩ into X
  const auto a3 = c->arrow({id_x}, 0);  // ⟨γ⟩ into X
  const auto r = c->compose(outer, std::vector<MultiArrow>{a1, a2, a3});
  CHECK(CoconeMulticategory::legs(r) ==
        std::vector<ArrowId>{cat->compose(s, f), cat->compose(s, s), cat->compose(f, id_x)});
  CHECK(CoconeMulticategory::legs(r) == std::vector<ArrowId>{g, id_y, f});
  CHECK(r.dom == ObjList{ObjId{0}, ObjId{1}, ObjId{0}});
}

TEST_CASE("cocone hom sizes are products of base hom sizes") {
  for (const auto& cat : {two_obj(), std::make_shared<const FinCategory>(walking_composable_pair())}) {
    auto c = discrete_cocone(cat);
    const std::size_t k = cat->object_count();
    std::vector<ObjList> lists = {{}};
    for (std::size_t len = 1; len <= 3; ++len) {
      std::vector<ObjList> next;
      for (const auto& l : lists) {
        if (l.size() != len - 1) continue;
        for (std::size_t x = 0; x < k; ++x) {
          next.push_back(l);
          next.back().push_back(ObjId{x});
        }
      }
      lists.insert(lists.end(), next.begin(), next.end());
    }
    for (const auto& dom : lists) {
      for (std::size_t x = 0; x < k; ++x) {
        std::size_t expect = 1;
        for (ObjId d : dom) expect *= count_arrows(*cat, d.value, x);
        CHECK(c->hom(dom, ObjId{x}, 10'000).size() == expect);
      }
    }
    CHECK(c->hom({}, ObjId{0}, 10).size() == 1);
  }
}

TEST_CASE("linear multicategory has only unary arrows") {
  auto l = linear(two_obj());
  CHECK(l->hom({ObjId{0}, ObjId{1}}, ObjId{1}, 100).empty());
  CHECK(l->hom({}, ObjId{1}, 100).empty());
  CHECK(l->hom({ObjId{0}}, ObjId{1}, 100).size() == 2);
  CHECK(check_multicategory(*l).passed());
  CHECK(underlying_category(*l).arrow_count() == 5);
}

TEST_CASE("underlying(C_▶) has exactly C's arrows") {
  auto cat = two_obj();
  const auto u = underlying_category(*discrete_cocone(cat));
  REQUIRE(u.arrow_count() == cat->arrow_count());
  FinFunctor iso{cat, std::make_shared<const FinCategory>(u), {0, 1}, {}};
  for (ArrowId a = 0; a < cat->arrow_count(); ++a) iso.on_arrows.push_back(*u.find_arrow("<" + cat->arrow(a).name + ">"));
  CHECK(check_fin_functor(iso).passed());
  CHECK(is_isomorphism(iso));
}

TEST_CASE("C_▶ × 1 is isomorphic to C_!") {
  auto cat = two_obj();
  auto p = product(discrete_cocone(cat), unit_multicategory());
  auto l = linear(cat);
  CHECK(check_multicategory(*p).passed());
  auto iso = find_isomorphism(*p, *l, [](ObjId x) { return x; }, CheckBounds{});
  CHECK(iso.has_value());
  // C_▶ × 1_▶ is not: it keeps the nullary arrows.
  auto q = product(discrete_cocone(cat), terminal_multicategory());
  CHECK_FALSE(find_isomorphism(*q, *l, [](ObjId x) { return x; }, CheckBounds{}).has_value());
}

TEST_CASE("(C×D)_▶ ≅ C_▶ × D_▶") {
  auto c = std::make_shared<const FinCategory>(monoid_category_of(cyclic_group(2)));
  auto d = std::make_shared<const FinCategory>(walking_composable_pair());
  auto lhs = discrete_cocone(std::make_shared<const FinCategory>(product_category(*c, *d)));
  auto rhs = product(discrete_cocone(c), discrete_cocone(d));
  CheckBounds bounds;
  bounds.arity_bound = 2;
  CHECK(find_isomorphism(*lhs, *rhs, [](ObjId x) { return x; }, bounds).has_value());
  const auto [pi1, pi2] = product_projections(rhs);
  CHECK(check_functor(pi1, bounds).passed());
  CHECK(check_functor(pi2, bounds).passed());
}

TEST_CASE("M × 1_▶ pairs each arrow with the unique cocone") {
  auto cat = two_obj();
  auto c = discrete_cocone(cat);
  auto p = product(c, terminal_multicategory());
  const ObjList dom = {ObjId{0}, ObjId{1}};
  CHECK(p->hom(dom, ObjId{1}, 100).size() == c->hom(dom, ObjId{1}, 100).size());
}

TEST_CASE("Set× hom sizes and pointwise composition") {
  auto s = rep_of_finsets({{"∅", {}}, {"1", {"*"}}, {"2", {"0", "1"}}});
  const ObjId two{2}, one{1}, empty{0};
  CHECK(s->hom({two, two}, two, 100).size() == 16);
  CHECK(s->hom({}, two, 100).size() == 2);
  CHECK(s->hom({}, empty, 100).empty());
  CHECK(s->hom({empty, two}, empty, 100).size() == 1);
  CHECK(s->hom({two, one, two}, two, 1000).size() == ipow(2, 4));

  // Composite table equals evaluation at every input.
  const auto homs22 = s->hom({two, two}, two, 100);
  const auto homs12 = s->hom({two}, two, 100);
  for (const auto& f : homs22) {
    for (const auto& g : homs22) {
      for (const auto& h : homs12) {
        const auto r = s->compose(f, std::vector<MultiArrow>{g, h});
        for (std::size_t x = 0; x < 2; ++x) {
          for (std::size_t y = 0; y < 2; ++y) {
            for (std::size_t z = 0; z < 2; ++z) {
              const auto gv = g.label[x * 2 + y];
              const auto hv = h.label[z];
              const auto expect = f.label[static_cast<std::size_t>(gv * 2 + hv)];
              CHECK(r.label[x * 4 + y * 2 + z] == expect);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("Mon(C_▶) ≅ C") {
  for (const auto& cat : {two_obj(), std::make_shared<const FinCategory>(walking_composable_pair())}) {
    auto c = discrete_cocone(cat);
    const auto mon = monoid_category(c);
    REQUIRE(mon.objects.size() == cat->object_count());
    REQUIRE(mon.category->arrow_count() == cat->arrow_count());
    const auto g = transpose_to_cat(identity_multifunctor(c));
    const auto f = as_fin_functor(g, mon);
    CHECK(check_fin_functor(f).passed());
    CHECK(is_isomorphism(f));
  }
}

TEST_CASE("Mon(Set× on {0,1})") {
  auto s = rep_of_finsets({{"2", {"0", "1"}}});
  const auto mon = monoid_category(s);
  std::set<std::pair<std::int64_t, Label>> found;
  for (const auto& m : mon.objects) found.insert({m.unit.label[0], m.mult.label});
  CHECK(found.count({0, Label{0, 1, 1, 1}}) == 1);  // OR, 0
  CHECK(found.count({1, Label{0, 0, 0, 1}}) == 1);  // AND, 1
  // Brute force over all (unit, table) pairs.
  std::size_t expect = 0;
  for (int u = 0; u < 2; ++u) {
    for (int t = 0; t < 16; ++t) {
      auto op = [t](int a, int b) { return (t >> (3 - (a * 2 + b))) & 1; };
      bool ok = true;
      for (int a = 0; a < 2; ++a) {
        ok &= op(u, a) == a && op(a, u) == a;
        for (int b = 0; b < 2; ++b) {
          for (int c = 0; c < 2; ++c) ok &= op(op(a, b), c) == op(a, op(b, c));
        }
      }
      expect += ok;
    }
  }
  CHECK(mon.objects.size() == expect);
  CHECK(expect == 4);
  CHECK(check_category(*mon.category).passed());
}

TEST_CASE("Mon(1_▶) is terminal") {
  const auto mon = monoid_category(terminal_multicategory());
  CHECK(mon.category->object_count() == 1);
  CHECK(mon.category->arrow_count() == 1);
}

TEST_CASE("transposes are mutually inverse for C_▶ → Set×") {
  auto cat = std::make_shared<const FinCategory>(monoid_category_of(cyclic_group(2)));
  auto c = discrete_cocone(cat);
  auto s = rep_of_finsets({{"1", {"*"}}, {"2", {"0", "1"}}});
  const auto mon = monoid_category(s);
  const auto gs = enumerate_monoid_valued_functors(cat, mon);
  REQUIRE_FALSE(gs.empty());
  for (const auto& g : gs) {
    CHECK(check_monoid_valued_functor(g).passed());
    const auto f = transpose_to_mlt(g, c);
    CHECK(check_functor(f).passed());
    CHECK(transpose_to_cat(f) == g);
  }
}

TEST_CASE("transpose_to_mlt on small arities") {
  auto cat = two_obj();
  auto c = discrete_cocone(cat);
  const auto g = transpose_to_cat(identity_multifunctor(c));
  const auto f = transpose_to_mlt(g, c);
  const auto lam = c->arrow({*cat->find_arrow("f")}, 1);
  CHECK(f.on_arrows(lam) == lam);
  CHECK(f.on_arrows(c->arrow({}, 0)) == c->arrow({}, 0));
}

TEST_CASE("transpose_to_cat rejects a non-functor") {
  auto cat = two_obj();
  auto c = discrete_cocone(cat);
  MultiFunctor bad = identity_multifunctor(c);
  bad.on_arrows = [c, cat](const MultiArrow& f) {
    if (f.arity() == 2 && f.cod.value == 1) return c->arrow({cat->identity(1), *cat->find_arrow("s")}, 1);
    return f;
  };
  CHECK_THROWS_AS(transpose_to_cat(bad), MonoidLawFailure);
}

TEST_CASE("cocone functor of a base functor") {
  auto cat = two_obj();
  auto term = std::make_shared<const FinCategory>(terminal_category());
  FinFunctor bang{cat, term, {0, 0}, std::vector<ArrowId>(cat->arrow_count(), 0)};
  REQUIRE(check_fin_functor(bang).passed());
  CHECK(check_functor(cocone_functor(bang, nullptr, terminal_multicategory())).passed());
  CHECK(check_functor(cocone_functor(identity_functor(cat))).passed());
}

TEST_CASE("linear transposes") {
  auto cat = two_obj();
  auto s = rep_of_finsets({{"2", {"0", "1"}}});
  const auto u = std::make_shared<const FinCategory>(underlying_category(*s));
  // X, Y ↦ 2; s ↦ negation, f ↦ const 0, g ↦ const 1
  auto arrow = [&](const char* name) { return *u->find_arrow(name); };
  FinFunctor g{cat, u, {0, 0},
               {u->identity(0), u->identity(0), arrow("[1,0]"), arrow("[0,0]"), arrow("[1,1]")}};
  REQUIRE(check_fin_functor(g).passed());
  const auto f = transpose_linear_to_mlt(g, s);
  CHECK(check_functor(f).passed());
  const auto back = transpose_linear_to_cat(f);
  CHECK(back.on_arrows == g.on_arrows);
}
