#include "doctest.h"

#include <memory>

#include "multikat/constructions.hpp"
#include "multikat/errors.hpp"
#include "multikat/kernel.hpp"

using namespace multikat;

namespace {

// One object; arrows (n, b) for arity n ≤ 2 and b ∈ Z/2; composition adds
// the b's. Entry `flip` (if any) has its result's b flipped.
std::shared_ptr<TabulatedMulticategory> weighted_operad(int flip = -1) {
  std::vector<TabulatedMulticategory::Arrow> arrows;
  auto index = [](std::size_t n, std::size_t b) { return n * 2 + b; };
  for (std::size_t n = 0; n <= 2; ++n) {
    for (std::size_t b = 0; b < 2; ++b) {
      arrows.push_back({"u" + std::to_string(n) + "_" + std::to_string(b),
                        ObjList(n, ObjId{0}), ObjId{0}});
    }
  }
  std::vector<TabulatedMulticategory::Entry> entries;
  for (std::size_t n = 0; n <= 2; ++n) {
    for (std::size_t b = 0; b < 2; ++b) {
      // all argument tuples with total arity ≤ 2
      std::vector<std::size_t> args;
      std::function<void(std::size_t, std::size_t, std::size_t)> rec =
          [&](std::size_t slot, std::size_t total, std::size_t weight) {
            if (slot == n) {
              const std::size_t f = index(n, b);
              const bool identity_case = (f == index(1, 0)) ||
                                         std::all_of(args.begin(), args.end(),
                                                     [&](auto g) { return g == index(1, 0); });
              if (identity_case) return;
              std::size_t r = index(total, (b + weight) % 2);
              if (static_cast<int>(entries.size()) == flip) r ^= 1;
              entries.push_back({f, args, r});
              return;
            }
            for (std::size_t k = 0; k + total <= 2; ++k) {
              for (std::size_t c = 0; c < 2; ++c) {
                args.push_back(index(k, c));
                rec(slot + 1, total + k, weight + c);
                args.pop_back();
              }
            }
          };
      rec(0, 0, 0);
    }
  }
  return std::make_shared<TabulatedMulticategory>("weighted", std::vector<std::string>{"*"}, 2,
                                                  arrows, std::vector<std::size_t>{index(1, 0)},
                                                  entries);
}

// Wraps a multicategory and corrupts one composite.
class Corrupted final : public Multicategory {
 public:
  Corrupted(MulticategoryPtr inner, MultiArrow f, std::vector<MultiArrow> args, MultiArrow result)
      : inner_(std::move(inner)), f_(std::move(f)), args_(std::move(args)), result_(std::move(result)) {}
  std::string name() const override { return "corrupt"; }
  std::uint64_t object_count() const override { return inner_->object_count(); }
  std::string object_name(ObjId x) const override { return inner_->object_name(x); }
  std::vector<MultiArrow> hom(const ObjList& d, ObjId c, std::size_t cap) const override {
    return inner_->hom(d, c, cap);
  }
  bool contains(const MultiArrow& f) const override { return inner_->contains(f); }
  MultiArrow identity(ObjId x) const override { return inner_->identity(x); }
  std::string describe_label(const MultiArrow& f) const override { return inner_->describe_label(f); }

 protected:
  MultiArrow do_compose(const MultiArrow& f, std::span<const MultiArrow> args) const override {
    if (f == f_ && std::equal(args.begin(), args.end(), args_.begin(), args_.end())) return result_;
    return inner_->compose_raw(f, args);
  }

 private:
  MulticategoryPtr inner_;
  MultiArrow f_;
  std::vector<MultiArrow> args_;
  MultiArrow result_;
};

}  // namespace

TEST_CASE("compose validates arity, objects and membership") {
  auto c = discrete_cocone(std::make_shared<const FinCategory>(two_object_category()));
  const auto& base = c->base();
  const ObjIndex x = 0, y = 1;
  const auto f = c->arrow({*base.find_arrow("f"), *base.find_arrow("s")}, y);
  CHECK_THROWS_AS(c->compose(f, std::vector<MultiArrow>{c->identity(ObjId{x})}), ArityMismatch);
  CHECK_THROWS_AS(
      c->compose(f, std::vector<MultiArrow>{c->identity(ObjId{y}), c->identity(ObjId{y})}),
      ObjectMismatch);
  MultiArrow bogus{{ObjId{x}}, ObjId{y}, {99}};
  CHECK_THROWS_AS(c->compose(bogus, std::vector<MultiArrow>{c->identity(ObjId{x})}), ForeignArrow);
  const MultiArrow id_y = c->identity(ObjId{y});
  CHECK(c->compose(id_y, std::vector<MultiArrow>{f}) == f);
}

TEST_CASE("single-slot composition fills identities") {
  auto c = discrete_cocone(std::make_shared<const FinCategory>(two_object_category()));
  const auto& base = c->base();
  const auto s = *base.find_arrow("s");
  const auto f = c->arrow({s, s}, 1);
  const auto g = c->arrow({*base.find_arrow("f"), s}, 1);
  const auto r = c->compose_at(f, 0, g);
  CHECK(CoconeMulticategory::legs(r) ==
        std::vector<ArrowId>{*base.find_arrow("g"), base.identity(1), s});
}

TEST_CASE("tabulated multicategory loads and passes") {
  auto m = weighted_operad();
  CHECK(m->hom(ObjList{ObjId{0}, ObjId{0}}, ObjId{0}, 100).size() == 2);
  CheckBounds bounds;
  bounds.arity_bound = 2;
  CHECK(check_multicategory(*m, bounds).passed());
}

TEST_CASE("tabulated multicategory rejects missing composites") {
  std::vector<TabulatedMulticategory::Arrow> arrows = {{"id", {ObjId{0}}, ObjId{0}},
                                                        {"m", {ObjId{0}, ObjId{0}}, ObjId{0}}};
  CHECK_THROWS_AS(TabulatedMulticategory("open", {"*"}, 3, arrows, {0}, {}), SchemaError);
  CHECK_NOTHROW(TabulatedMulticategory("ok", {"*"}, 2, arrows, {0}, {}));
}

TEST_CASE("a corrupted tabulated composite is named in the report") {
  auto m = weighted_operad(3);
  CheckBounds bounds;
  bounds.arity_bound = 2;
  const auto report = check_multicategory(*m, bounds);
  REQUIRE_FALSE(report.passed());
  CHECK(report.violations()[0].law == "associativity");
  CHECK(report.violations()[0].instance.find("u") != std::string::npos);
}

TEST_CASE("check_multicategory on C_▶ of the two-object category") {
  auto c = discrete_cocone(std::make_shared<const FinCategory>(two_object_category()));
  const auto report = check_multicategory(*c);
  CHECK(report.passed());
  CHECK(report.checked() > 1000);
}

TEST_CASE("check_multicategory on Set× over {∅, 1, 2} at arity 2") {
  auto s = rep_of_finsets({{"∅", {}}, {"1", {"*"}}, {"2", {"0", "1"}}});
  CheckBounds bounds;
  bounds.arity_bound = 2;
  CHECK(check_multicategory(*s, bounds).passed());
}

TEST_CASE("a corrupted composite breaks a law") {
  auto c = discrete_cocone(std::make_shared<const FinCategory>(two_object_category()));
  const auto& base = c->base();
  const auto s = c->arrow({*base.find_arrow("s")}, 1);
  const auto f = c->arrow({*base.find_arrow("f")}, 1);
  const auto wrong = f;  // s∘f should be g
  Corrupted bad(c, s, {f}, wrong);
  const auto report = check_multicategory(bad);
  REQUIRE_FALSE(report.passed());
}

TEST_CASE("check_functor localizes a broken composite") {
  auto cat = std::make_shared<const FinCategory>(two_object_category());
  auto c = discrete_cocone(cat);
  CHECK(check_functor(identity_multifunctor(c)).passed());
  const auto s = c->arrow({*cat->find_arrow("s")}, 1);
  MultiFunctor broken = identity_multifunctor(c);
  broken.on_arrows = [c, s, cat](const MultiArrow& f) {
    if (f == s) return c->arrow({*cat->find_arrow("s")}, 1);
    if (f.arity() == 2 && f.label == Label{static_cast<std::int64_t>(*cat->find_arrow("s")),
                                           static_cast<std::int64_t>(*cat->find_arrow("s"))}) {
      return c->arrow({cat->identity(1), cat->identity(1)}, 1);
    }
    return f;
  };
  const auto report = check_functor(broken);
  REQUIRE_FALSE(report.passed());
  CHECK(report.violations()[0].law == "composition");
}

TEST_CASE("underlying category of Set× on {1, 2} is the full function category") {
  auto s = rep_of_finsets({{"1", {"*"}}, {"2", {"0", "1"}}});
  const auto u = underlying_category(*s);
  // |Set(X, Y)| = |Y|^|X| summed over pairs: 1 + 2 + 1 + 4
  CHECK(u.arrow_count() == 8);
  CHECK(check_category(u).passed());
}

TEST_CASE("arrow parsing round-trips describe()") {
  auto c = discrete_cocone(std::make_shared<const FinCategory>(two_object_category()));
  for (const auto& f : c->hom(ObjList{ObjId{0}, ObjId{1}}, ObjId{1}, 100)) {
    CHECK(c->parse_arrow(c->describe(f), 100) == f);
  }
  CHECK_THROWS_AS(c->parse_arrow("X -> Q : <f>", 100), SchemaError);
}

TEST_CASE("split_top_level respects brackets") {
  CHECK(split_top_level("(1,0), (0,1)", ',') == std::vector<std::string>{"(1,0)", "(0,1)"});
  CHECK(split_top_level("", ',').empty());
}
