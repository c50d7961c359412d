#include "multikat/fibrations.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "multikat/errors.hpp"

namespace multikat {

namespace {

constexpr std::uint64_t kScanLimit = 1u << 24;

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t space(std::span<const std::uint64_t> sizes) {
  std::uint64_t n = 1;
  for (auto s : sizes) n = mul_sat(n, s);
  return n;
}

// Visits index tuples over `sizes`: all of them when there are at most
// `budget`, otherwise `budget` seeded random ones.
void for_each_tuple(std::span<const std::uint64_t> sizes, const FiberBounds& bounds,
                    std::mt19937_64& rng,
                    const std::function<void(std::span<const std::uint64_t>)>& visit) {
  const std::uint64_t total = space(sizes);
  if (total == 0) return;
  std::vector<std::uint64_t> t(sizes.size(), 0);
  if (total <= bounds.budget) {
    while (true) {
      visit(t);
      std::size_t i = t.size();
      while (i > 0 && ++t[i - 1] == sizes[i - 1]) t[--i] = 0;
      if (i == 0) return;
    }
  }
  for (std::uint64_t k = 0; k < bounds.budget; ++k) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = std::uniform_int_distribution<std::uint64_t>(0, sizes[i] - 1)(rng);
    }
    visit(t);
  }
}

// Mixed-radix iteration over one choice from each option list, first slot
// most significant.
void for_each_legs(const std::vector<const std::vector<ArrowId>*>& options,
                   const std::function<void(std::span<const ArrowId>)>& visit) {
  for (const auto* o : options) {
    if (o->empty()) return;
  }
  std::vector<std::size_t> idx(options.size(), 0);
  std::vector<ArrowId> legs(options.size());
  while (true) {
    for (std::size_t i = 0; i < options.size(); ++i) legs[i] = (*options[i])[idx[i]];
    visit(legs);
    std::size_t i = options.size();
    while (i > 0 && ++idx[i - 1] == options[i - 1]->size()) idx[--i] = 0;
    if (i == 0) return;
  }
}

std::string legs_text(const FinCategory& c, std::span<const ArrowId> legs) {
  std::string s = "<";
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (i > 0) s += ",";
    s += c.arrow(legs[i]).name;
  }
  return s + ">";
}

}  // namespace

// ---------------------------------------------------------------------------
// Fibers

std::string FiberMonoid::name_of(std::uint64_t a) const {
  return element_name ? element_name(a) : std::to_string(a);
}

std::optional<std::uint64_t> FiberMonoid::find(std::string_view text) const {
  if (parse) {
    auto a = parse(text);
    if (a && *a < size) return a;
    return std::nullopt;
  }
  if (size > kScanLimit) throw EnumerationOverflow(name + ": fiber too large to scan");
  for (std::uint64_t a = 0; a < size; ++a) {
    if (name_of(a) == text) return a;
  }
  return std::nullopt;
}

FiberMonoid fiber_of(const FinMonoid& m) {
  auto shared = std::make_shared<const FinMonoid>(m);
  FiberMonoid f;
  f.name = m.name;
  f.size = m.size();
  f.unit = m.unit;
  f.op = [shared](std::uint64_t a, std::uint64_t b) { return std::uint64_t{shared->op(a, b)}; };
  f.element_name = [shared](std::uint64_t a) { return shared->carrier.at(a); };
  return f;
}

FinMonoid tabulate_fiber(const FiberMonoid& f, std::size_t cap) {
  if (f.size > cap) {
    throw EnumerationOverflow(f.name + ": " + std::to_string(f.size) + " elements exceed the cap");
  }
  FinMonoid m{f.name, {}, {}, static_cast<std::size_t>(f.unit)};
  for (std::uint64_t a = 0; a < f.size; ++a) m.carrier.push_back(f.name_of(a));
  for (std::uint64_t a = 0; a < f.size; ++a) {
    for (std::uint64_t b = 0; b < f.size; ++b) m.table.push_back(f.op(a, b));
  }
  return m;
}

std::uint64_t IndexedMonoid::product(ObjIndex cod, std::span<const ArrowId> legs,
                                     std::span<const std::uint64_t> elems) const {
  const FiberMonoid& fib = fibers.at(cod);
  std::uint64_t acc = fib.unit;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const std::uint64_t moved = action(legs[i], elems[i]);
    acc = i == 0 ? moved : fib.op(acc, moved);
  }
  return acc;
}

LawReport check_indexed_monoid(const IndexedMonoid& im, const FiberBounds& bounds) {
  const FinCategory& c = *im.base;
  const bool posetal = im.posetal();
  const std::uint64_t arrows = c.arrow_count();

  bool sampled = false;
  for (const auto& f : im.fibers) {
    const std::uint64_t s = f.size;
    const std::uint64_t widest[] = {s, s, s, posetal ? s : 1};
    const std::uint64_t by_arrow[] = {arrows, arrows, s};
    sampled |= space(widest) > bounds.budget || space(by_arrow) > bounds.budget;
  }
  LawReport report(im.name + (sampled ? " (sampled)" : ""));
  report.set_violation_limit(bounds.violation_limit);
  if (im.fibers.size() != c.object_count()) {
    report.fail("shape", std::to_string(im.fibers.size()) + " fibers for " +
                             std::to_string(c.object_count()) + " objects");
    return report;
  }
  for (const auto& f : im.fibers) {
    if (f.unit >= f.size || !f.op || (f.posetal() != posetal)) {
      report.fail("shape", f.name + ": missing operation, unit out of range or mixed fiber kinds");
      return report;
    }
  }
  std::mt19937_64 rng(bounds.seed);

  for (std::size_t x = 0; x < im.fibers.size(); ++x) {
    const FiberMonoid& f = im.fibers[x];
    const std::uint64_t s = f.size;
    auto nm = [&](std::uint64_t a) { return f.name_of(a); };
    bool typed = true;
    const std::uint64_t two[] = {s, s};
    for_each_tuple(two, bounds, rng, [&](std::span<const std::uint64_t> t) {
      typed &= report.expect(f.op(t[0], t[1]) < s, "fiber typing", [&] {
        return f.name + ": " + nm(t[0]) + "·" + nm(t[1]) + " is not an element";
      });
    });
    if (!typed) continue;
    const std::uint64_t one[] = {s};
    for_each_tuple(one, bounds, rng, [&](std::span<const std::uint64_t> t) {
      const auto a = t[0];
      report.expect(f.op(f.unit, a) == a && f.op(a, f.unit) == a, "unit", [&] {
        return f.name + ": e·" + nm(a) + " = " + nm(f.op(f.unit, a)) + ", " + nm(a) + "·e = " +
               nm(f.op(a, f.unit));
      });
      if (posetal) {
        report.expect(f.leq(a, a), "reflexivity", [&] { return f.name + ": not " + nm(a) + " → " + nm(a); });
      }
    });
    const std::uint64_t three[] = {s, s, s};
    for_each_tuple(three, bounds, rng, [&](std::span<const std::uint64_t> t) {
      const auto lhs = f.op(f.op(t[0], t[1]), t[2]);
      const auto rhs = f.op(t[0], f.op(t[1], t[2]));
      report.expect(lhs == rhs, "associativity", [&] {
        return f.name + ": (" + nm(t[0]) + "·" + nm(t[1]) + ")·" + nm(t[2]) + " = " + nm(lhs) +
               " but " + nm(t[0]) + "·(" + nm(t[1]) + "·" + nm(t[2]) + ") = " + nm(rhs);
      });
      if (posetal && f.leq(t[0], t[1]) && f.leq(t[1], t[2])) {
        report.expect(f.leq(t[0], t[2]), "transitivity", [&] {
          return f.name + ": " + nm(t[0]) + " → " + nm(t[1]) + " → " + nm(t[2]) + " but not " +
                 nm(t[0]) + " → " + nm(t[2]);
        });
      }
    });
    if (!posetal) continue;
    for_each_tuple(two, bounds, rng, [&](std::span<const std::uint64_t> t) {
      if (t[0] != t[1] && f.leq(t[0], t[1])) {
        report.expect(!f.leq(t[1], t[0]), "antisymmetry", [&] {
          return f.name + ": " + nm(t[0]) + " ⇄ " + nm(t[1]);
        });
      }
    });
    const std::uint64_t four[] = {s, s, s, s};
    for_each_tuple(four, bounds, rng, [&](std::span<const std::uint64_t> t) {
      if (!f.leq(t[0], t[1]) || !f.leq(t[2], t[3])) return;
      report.expect(f.leq(f.op(t[0], t[2]), f.op(t[1], t[3])), "monotone op", [&] {
        return f.name + ": " + nm(t[0]) + " → " + nm(t[1]) + " and " + nm(t[2]) + " → " +
               nm(t[3]) + " but not " + nm(f.op(t[0], t[2])) + " → " + nm(f.op(t[1], t[3]));
      });
    });
  }
  if (!report.passed()) return report;

  // Actions.
  bool typed = true;
  for (ArrowId l = 0; l < arrows; ++l) {
    const FiberMonoid& src = im.fibers[c.dom(l)];
    const FiberMonoid& tgt = im.fibers[c.cod(l)];
    const std::uint64_t one[] = {src.size};
    for_each_tuple(one, bounds, rng, [&](std::span<const std::uint64_t> t) {
      typed &= report.expect(im.action(l, t[0]) < tgt.size, "action typing", [&] {
        return c.arrow(l).name + "·" + src.name_of(t[0]) + " is not in " + tgt.name;
      });
    });
  }
  if (!typed) return report;

  for (ObjIndex x = 0; x < c.object_count(); ++x) {
    const FiberMonoid& f = im.fibers[x];
    const ArrowId id = c.identity(x);
    const std::uint64_t one[] = {f.size};
    for_each_tuple(one, bounds, rng, [&](std::span<const std::uint64_t> t) {
      const auto out = im.action(id, t[0]);
      report.expect(out == t[0], "action identity", [&] {
        return c.arrow(id).name + "·" + f.name_of(t[0]) + " = " + f.name_of(out);
      });
    });
  }

  for (ArrowId l = 0; l < arrows; ++l) {
    const FiberMonoid& src = im.fibers[c.dom(l)];
    const FiberMonoid& tgt = im.fibers[c.cod(l)];
    const auto& name = c.arrow(l).name;
    const auto eu = im.action(l, src.unit);
    report.expect(eu == tgt.unit, "action unit", [&] {
      return name + "·e = " + tgt.name_of(eu);
    });
    const std::uint64_t two[] = {src.size, src.size};
    for_each_tuple(two, bounds, rng, [&](std::span<const std::uint64_t> t) {
      const auto lhs = im.action(l, src.op(t[0], t[1]));
      const auto rhs = tgt.op(im.action(l, t[0]), im.action(l, t[1]));
      report.expect(lhs == rhs, "action product", [&] {
        return name + "·(" + src.name_of(t[0]) + "·" + src.name_of(t[1]) + ") = " + tgt.name_of(lhs) +
               " but " + name + "·" + src.name_of(t[0]) + " · " + name + "·" + src.name_of(t[1]) +
               " = " + tgt.name_of(rhs);
      });
      if (posetal && src.leq(t[0], t[1])) {
        report.expect(tgt.leq(im.action(l, t[0]), im.action(l, t[1])), "action monotone", [&] {
          return src.name_of(t[0]) + " → " + src.name_of(t[1]) + " but not after " + name;
        });
      }
    });
  }

  std::uint64_t widest = 0;
  for (const auto& f : im.fibers) widest = std::max(widest, f.size);
  const std::uint64_t triple[] = {arrows, arrows, widest};
  for_each_tuple(triple, bounds, rng, [&](std::span<const std::uint64_t> t) {
    const auto l = static_cast<ArrowId>(t[0]);
    const auto m = static_cast<ArrowId>(t[1]);
    if (c.cod(l) != c.dom(m) || t[2] >= im.fibers[c.dom(l)].size) return;
    const auto ml = c.compose(m, l);
    const auto lhs = im.action(ml, t[2]);
    const auto rhs = im.action(m, im.action(l, t[2]));
    report.expect(lhs == rhs, "action composition", [&] {
      const auto& tgt = im.fibers[c.cod(m)];
      return "(" + c.arrow(m).name + "∘" + c.arrow(l).name + ")·" + im.fibers[c.dom(l)].name_of(t[2]) +
             " = " + tgt.name_of(lhs) + " but " + c.arrow(m).name + "·(" + c.arrow(l).name + "·" +
             im.fibers[c.dom(l)].name_of(t[2]) + ") = " + tgt.name_of(rhs);
    });
  });
  return report;
}

// ---------------------------------------------------------------------------
// M̂

GrothendieckMulticategory::GrothendieckMulticategory(IndexedMonoid im,
                                                     std::shared_ptr<const CoconeMulticategory> cone)
    : im_(std::move(im)), cone_(std::move(cone)) {
  if (!cone_) cone_ = discrete_cocone(im_.base);
  if (&cone_->base() != im_.base.get() && !(cone_->base() == *im_.base)) {
    throw SchemaError("", im_.name + ": cone over a different base category");
  }
  if (im_.fibers.size() != im_.base->object_count()) {
    throw SchemaError("/fibers", im_.name + ": one fiber per object expected");
  }
  offsets_.push_back(0);
  for (const auto& f : im_.fibers) {
    const std::uint64_t next = offsets_.back() + f.size;
    if (next < offsets_.back()) throw EnumerationOverflow(im_.name + ": too many objects");
    offsets_.push_back(next);
  }
}

ObjId GrothendieckMulticategory::object(ObjIndex x, std::uint64_t elem) const {
  if (x >= im_.fibers.size() || elem >= im_.fibers[x].size) {
    throw ObjectMismatch(name() + ": no element " + std::to_string(elem) + " over object " +
                         std::to_string(x));
  }
  return ObjId{offsets_[x] + elem};
}

ObjIndex GrothendieckMulticategory::base_of(ObjId a) const {
  if (a.value >= offsets_.back()) throw ObjectMismatch(name() + ": object out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), a.value);
  return static_cast<ObjIndex>(it - offsets_.begin() - 1);
}

std::uint64_t GrothendieckMulticategory::elem_of(ObjId a) const {
  return a.value - offsets_[base_of(a)];
}

std::uint64_t GrothendieckMulticategory::object_count() const { return offsets_.back(); }

std::string GrothendieckMulticategory::object_name(ObjId a) const {
  const ObjIndex x = base_of(a);
  const std::string e = im_.fibers[x].name_of(elem_of(a));
  if (im_.base->object_count() == 1) return e;
  return im_.base->objects()[x] + ":" + e;
}

std::optional<ObjId> GrothendieckMulticategory::find_object(std::string_view text) const {
  if (im_.base->object_count() == 1) {
    auto e = im_.fibers[0].find(text);
    if (!e) return std::nullopt;
    return object(0, *e);
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const auto x = im_.base->find_object(text.substr(0, colon));
  if (!x) return std::nullopt;
  auto e = im_.fibers[*x].find(text.substr(colon + 1));
  if (!e) return std::nullopt;
  return object(*x, *e);
}

std::uint64_t GrothendieckMulticategory::product_of(const ObjList& dom, std::span<const ArrowId> legs,
                                                    ObjIndex cod) const {
  std::vector<std::uint64_t> elems;
  elems.reserve(dom.size());
  for (ObjId a : dom) elems.push_back(elem_of(a));
  return im_.product(cod, legs, elems);
}

std::vector<MultiArrow> GrothendieckMulticategory::hom(const ObjList& dom, ObjId cod,
                                                       std::size_t cap) const {
  const ObjIndex x = base_of(cod);
  const std::uint64_t target = elem_of(cod);
  const FiberMonoid& fib = im_.fibers[x];
  std::vector<const std::vector<ArrowId>*> options;
  for (ObjId a : dom) options.push_back(&im_.base->hom(base_of(a), x));
  std::vector<MultiArrow> out;
  for_each_legs(options, [&](std::span<const ArrowId> legs) {
    if (!fib.relates(product_of(dom, legs, x), target)) return;
    if (out.size() == cap) {
      throw EnumerationOverflow(name() + " hom(" + describe_list(dom) + "; " + object_name(cod) +
                                ") exceeds the cap");
    }
    out.push_back(MultiArrow{dom, cod, Label(legs.begin(), legs.end())});
  });
  return out;
}

std::vector<MultiArrow> GrothendieckMulticategory::arrows_from(const ObjList& dom,
                                                               std::size_t cap) const {
  std::vector<MultiArrow> out;
  auto push = [&](MultiArrow f) {
    if (out.size() == cap) throw EnumerationOverflow(name() + ": arrows out of a list exceed the cap");
    out.push_back(std::move(f));
  };
  for (ObjIndex x = 0; x < im_.base->object_count(); ++x) {
    const FiberMonoid& fib = im_.fibers[x];
    std::vector<const std::vector<ArrowId>*> options;
    for (ObjId a : dom) options.push_back(&im_.base->hom(base_of(a), x));
    for_each_legs(options, [&](std::span<const ArrowId> legs) {
      const std::uint64_t p = product_of(dom, legs, x);
      const Label label(legs.begin(), legs.end());
      if (!fib.posetal()) {
        push(MultiArrow{dom, object(x, p), label});
        return;
      }
      if (fib.size > kScanLimit) throw EnumerationOverflow(name() + ": fiber too large to scan");
      for (std::uint64_t e = 0; e < fib.size; ++e) {
        if (fib.leq(p, e)) push(MultiArrow{dom, object(x, e), label});
      }
    });
  }
  return out;
}

bool GrothendieckMulticategory::contains(const MultiArrow& f) const {
  if (f.label.size() != f.dom.size() || f.cod.value >= object_count()) return false;
  const ObjIndex x = base_of(f.cod);
  std::vector<ArrowId> legs;
  for (std::size_t i = 0; i < f.dom.size(); ++i) {
    if (f.dom[i].value >= object_count()) return false;
    const auto l = f.label[i];
    if (l < 0 || static_cast<std::size_t>(l) >= im_.base->arrow_count()) return false;
    const auto& a = im_.base->arrow(static_cast<ArrowId>(l));
    if (a.dom != base_of(f.dom[i]) || a.cod != x) return false;
    legs.push_back(static_cast<ArrowId>(l));
  }
  return im_.fibers[x].relates(product_of(f.dom, legs, x), elem_of(f.cod));
}

MultiArrow GrothendieckMulticategory::identity(ObjId a) const {
  return MultiArrow{{a}, a, {static_cast<std::int64_t>(im_.base->identity(base_of(a)))}};
}

std::string GrothendieckMulticategory::describe_label(const MultiArrow& f) const {
  std::vector<ArrowId> legs;
  for (auto l : f.label) {
    if (l < 0 || static_cast<std::size_t>(l) >= im_.base->arrow_count()) return "<?>";
    legs.push_back(static_cast<ArrowId>(l));
  }
  return legs_text(*im_.base, legs);
}

MultiArrow GrothendieckMulticategory::do_compose(const MultiArrow& f,
                                                 std::span<const MultiArrow> args) const {
  MultiArrow out{{}, f.cod, {}};
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto outer = static_cast<ArrowId>(f.label[i]);
    for (std::size_t j = 0; j < args[i].label.size(); ++j) {
      out.dom.push_back(args[i].dom[j]);
      out.label.push_back(static_cast<std::int64_t>(
          im_.base->compose(outer, static_cast<ArrowId>(args[i].label[j]))));
    }
  }
  return out;
}

std::vector<ObjId> GrothendieckMulticategory::lifts(const ObjList& dom, std::span<const ArrowId> legs,
                                                    ObjIndex cod) const {
  const FiberMonoid& fib = im_.fibers.at(cod);
  if (fib.size > kScanLimit) throw EnumerationOverflow(name() + ": fiber too large to scan");
  const std::uint64_t p = product_of(dom, legs, cod);
  std::vector<ObjId> out;
  for (std::uint64_t e = 0; e < fib.size; ++e) {
    if (fib.relates(p, e)) out.push_back(object(cod, e));
  }
  return out;
}

Grothendieck grothendieck(const IndexedMonoid& im, std::shared_ptr<const CoconeMulticategory> cone) {
  auto total = std::make_shared<const GrothendieckMulticategory>(im, std::move(cone));
  MultiFunctor proj;
  proj.name = "proj";
  proj.source = total;
  proj.target = total->cone();
  const GrothendieckMulticategory* m = total.get();
  proj.on_objects = [m](ObjId a) { return ObjId{m->base_of(a)}; };
  proj.on_arrows = [m](const MultiArrow& f) {
    MultiArrow out{{}, ObjId{m->base_of(f.cod)}, f.label};
    for (ObjId a : f.dom) out.dom.push_back(ObjId{m->base_of(a)});
    return out;
  };
  return Grothendieck{std::move(total), std::move(proj)};
}

LawReport check_unique_lifts(const GrothendieckMulticategory& m, const CheckBounds& bounds) {
  const IndexedMonoid& im = m.indexed();
  const FinCategory& c = *im.base;
  LawReport report("unique lift " + m.name() + " → " + m.cone()->name());
  report.set_violation_limit(bounds.violation_limit);

  std::mt19937_64 rng(bounds.seed);
  std::vector<std::vector<std::uint64_t>> sources(c.object_count());
  for (ObjIndex x = 0; x < c.object_count(); ++x) {
    const std::uint64_t s = im.fibers[x].size;
    if (bounds.max_objects == 0 || s <= bounds.max_objects) {
      if (s > kScanLimit) throw EnumerationOverflow(m.name() + ": set an object sample size");
      for (std::uint64_t e = 0; e < s; ++e) sources[x].push_back(e);
    } else {
      std::set<std::uint64_t> chosen;
      std::uniform_int_distribution<std::uint64_t> pick(0, s - 1);
      while (chosen.size() < bounds.max_objects) chosen.insert(pick(rng));
      sources[x].assign(chosen.begin(), chosen.end());
    }
  }

  CheckBounds base_bounds = bounds;
  base_bounds.max_objects = 0;
  HomEnumerator base(*m.cone(), base_bounds);
  for (const auto& dom : base.lists(0, bounds.arity_bound)) {
    for (ObjIndex x = 0; x < c.object_count(); ++x) {
      for (const auto& f : base.hom(dom, ObjId{x})) {
        const auto legs = CoconeMulticategory::legs(f);
        std::vector<std::size_t> idx(dom.size(), 0);
        while (true) {
          ObjList srcs;
          for (std::size_t i = 0; i < dom.size(); ++i) {
            srcs.push_back(m.object(dom[i].value, sources[dom[i].value][idx[i]]));
          }
          const auto found = m.lifts(srcs, legs, x);
          report.expect(found.size() == 1, "unique lift", [&] {
            return m.cone()->describe(f) + " from " + m.describe_list(srcs) + ": " +
                   std::to_string(found.size()) + " lifts";
          });
          std::size_t i = dom.size();
          while (i > 0 && ++idx[i - 1] == sources[dom[i - 1].value].size()) idx[--i] = 0;
          if (i == 0) break;
        }
      }
    }
  }
  return report;
}

ExtractedFiber extract_fiber(const GrothendieckMulticategory& m, ObjIndex x, std::size_t cap) {
  const IndexedMonoid& im = m.indexed();
  const FiberMonoid& fib = im.fibers.at(x);
  if (fib.size > cap) {
    throw EnumerationOverflow(fib.name + ": " + std::to_string(fib.size) + " elements exceed the cap");
  }
  const std::size_t s = fib.size;
  const auto id = static_cast<std::int64_t>(im.base->identity(x));
  auto obj = [&](std::size_t e) { return m.object(x, e); };

  ExtractedFiber out;
  out.order.assign(s * s, false);
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      out.order[a * s + b] = m.contains(MultiArrow{{obj(a)}, obj(b), {id}});
    }
  }
  // The least c with ⟨dom⟩ → c over identities.
  auto least = [&](const ObjList& dom, const Label& legs, const std::string& what) {
    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < s; ++c) {
      if (m.contains(MultiArrow{dom, obj(c), legs})) candidates.push_back(c);
    }
    for (auto c : candidates) {
      if (std::all_of(candidates.begin(), candidates.end(),
                      [&](std::size_t d) { return out.order[c * s + d]; })) {
        return c;
      }
    }
    throw MonoidLawFailure(m.name() + ": no least target for " + what);
  };

  out.monoid.name = fib.name;
  for (std::size_t a = 0; a < s; ++a) out.monoid.carrier.push_back(fib.name_of(a));
  out.monoid.unit = least({}, {}, "⟨⟩");
  out.monoid.table.resize(s * s);
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      out.monoid.table[a * s + b] =
          least({obj(a), obj(b)}, {id, id}, "⟨" + fib.name_of(a) + "," + fib.name_of(b) + "⟩");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Modules

IndexedMonoid module_indexed_monoid(const RigModule& m, std::shared_ptr<const FinCategory> base) {
  if (!base) base = rig_category(m.rig);
  auto shared = std::make_shared<const RigModule>(m);
  IndexedMonoid im;
  im.name = m.carrier.name;
  im.base = std::move(base);
  im.fibers = {fiber_of(m.carrier)};
  im.action = [shared](ArrowId l, std::uint64_t x) {
    return std::uint64_t{shared->act(l, static_cast<std::size_t>(x))};
  };
  return im;
}

ModuleFibration module_fibration(const RigModule& m) {
  const auto report = check_module(m);
  if (!report.passed()) {
    throw ModuleLawFailure(m.carrier.name + ": not a module (" + report.violations().front().law + ")");
  }
  CartesianMulticategory base = rig_operad(m.rig);
  auto cone = std::dynamic_pointer_cast<const CoconeMulticategory>(base.multicat);
  Grothendieck g = grothendieck(module_indexed_monoid(m, cone->base_ptr()), cone);
  const FinRig rig = m.rig;
  ActFn act = [rig](const IndexMap& p, const MultiArrow& f) {
    MultiArrow out{p.tgt, f.cod, Label(p.tgt.size(), -1)};
    for (std::size_t i = 0; i < p.map.size(); ++i) {
      auto& slot = out.label[p.map[i]];
      const auto l = static_cast<std::size_t>(f.label[i]);
      slot = static_cast<std::int64_t>(slot < 0 ? l : rig.plus(static_cast<std::size_t>(slot), l));
    }
    for (auto& slot : out.label) {
      if (slot < 0) slot = static_cast<std::int64_t>(rig.zero());
    }
    return out;
  };
  CartesianMulticategory total{g.total->name(), g.total, std::move(act)};
  FpFunctor proj{g.proj, total, base};
  return ModuleFibration{m, std::move(base), std::move(g), std::move(total), std::move(proj)};
}

Entailment span_query(const ModuleFibration& mf, const std::vector<std::uint64_t>& elems,
                      std::uint64_t target, std::size_t witness_limit) {
  const auto& total = *mf.groth.total;
  ObjList dom;
  for (auto e : elems) dom.push_back(total.object(0, e));
  Entailment out;
  for (const auto& f : total.hom(dom, total.object(0, target), SIZE_MAX)) {
    out.holds = true;
    if (out.witnesses.size() == witness_limit) {
      out.truncated = true;
      break;
    }
    out.witnesses.emplace_back(f.label.begin(), f.label.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Torus

Torus::Torus(std::size_t n) : n_(n) {
  if (n < 1 || n > 8) throw SchemaError("/grid", "torus size must be between 1 and 8");
  const auto k = static_cast<long>(n);
  using Linear = std::pair<long, long> (*)(long, long);
  const Linear linear[] = {
      [](long x, long y) { return std::pair{x, y}; },   [](long x, long y) { return std::pair{-y, x}; },
      [](long x, long y) { return std::pair{-x, -y}; }, [](long x, long y) { return std::pair{y, -x}; },
      [](long x, long y) { return std::pair{-x, y}; },  [](long x, long y) { return std::pair{y, x}; },
      [](long x, long y) { return std::pair{x, -y}; },  [](long x, long y) { return std::pair{-y, -x}; },
  };
  const char* linear_names[] = {"", "r1", "r2", "r3", "s0", "s1", "s2", "s3"};
  std::map<std::vector<std::size_t>, ArrowId> seen;
  std::vector<FinCategory::Arrow> arrows;
  auto mod = [k](long v) { return static_cast<std::size_t>(((v % k) + k) % k); };
  for (std::size_t m = 0; m < 8; ++m) {
    for (long dx = 0; dx < k; ++dx) {
      for (long dy = 0; dy < k; ++dy) {
        std::vector<std::size_t> perm(n * n);
        for (long y = 0; y < k; ++y) {
          for (long x = 0; x < k; ++x) {
            const auto [u, v] = linear[m](x, y);
            perm[static_cast<std::size_t>(y * k + x)] = mod(v + dy) * n + mod(u + dx);
          }
        }
        if (seen.count(perm) != 0) continue;
        seen.emplace(perm, perms_.size());
        std::string name;
        if (m == 0 && dx == 0 && dy == 0) {
          name = "e";
        } else {
          name = linear_names[m];
          if (dx != 0 || dy != 0 || m == 0) {
            name += (m == 0 ? "" : "+") + std::string("t(") + std::to_string(dx) + "," +
                    std::to_string(dy) + ")";
          }
        }
        arrows.push_back({name, 0, 0});
        perms_.push_back(std::move(perm));
      }
    }
  }
  const std::size_t g = perms_.size();
  std::vector<std::int64_t> table(g * g);
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) {
      std::vector<std::size_t> ab(n * n);
      for (std::size_t c = 0; c < n * n; ++c) ab[c] = perms_[a][perms_[b][c]];
      table[a * g + b] = static_cast<std::int64_t>(seen.at(ab));
    }
  }
  group_ = std::make_shared<const FinCategory>("Isom(T" + std::to_string(n) + ")",
                                               std::vector<std::string>{"plane"}, std::move(arrows),
                                               std::vector<ArrowId>{0}, std::move(table));
}

Torus::Figure Torus::full() const noexcept {
  return cells() == 64 ? ~Figure{0} : (Figure{1} << cells()) - 1;
}

Torus::Figure Torus::image(ArrowId g, Figure a) const {
  const auto& p = perms_.at(g);
  Figure out = 0;
  while (a != 0) {
    const int c = std::countr_zero(a);
    out |= Figure{1} << p[static_cast<std::size_t>(c)];
    a &= a - 1;
  }
  return out;
}

std::string Torus::figure_name(Figure a) const {
  std::string s = "{";
  bool first = true;
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = 0; y < n_; ++y) {
      if ((a >> (y * n_ + x) & 1u) == 0) continue;
      if (!first) s += ",";
      first = false;
      s += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
  }
  return s + "}";
}

std::optional<Torus::Figure> Torus::parse_figure(std::string_view text) const {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "∅" || text == "empty" || text == "{}") return Figure{0};
  if (text == "all") return full();
  if (text == "sq1") return Figure{1};
  if (text == "domino") {
    if (n_ < 2) return std::nullopt;
    return Figure{3};
  }
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') return std::nullopt;
  Figure out = 0;
  for (const auto& item : split_top_level(text.substr(1, text.size() - 2), ',')) {
    if (item.size() < 5 || item.front() != '(' || item.back() != ')') return std::nullopt;
    const auto parts = split_top_level(std::string_view(item).substr(1, item.size() - 2), ',');
    if (parts.size() != 2) return std::nullopt;
    std::size_t xy[2];
    for (int i = 0; i < 2; ++i) {
      try {
        std::size_t used = 0;
        const long v = std::stol(parts[i], &used);
        if (used != parts[i].size() || v < 0 || static_cast<std::size_t>(v) >= n_) return std::nullopt;
        xy[i] = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
    out |= Figure{1} << (xy[1] * n_ + xy[0]);
  }
  return out;
}

namespace {

FiberMonoid figure_fiber(const std::shared_ptr<const Torus>& t, std::string name) {
  FiberMonoid f;
  if (t->cells() >= 64) throw EnumerationOverflow("fiber of an 8x8 torus has 2^64 elements");
  f.name = std::move(name);
  f.size = std::uint64_t{1} << t->cells();
  f.unit = 0;
  f.element_name = [t](std::uint64_t a) { return t->figure_name(a); };
  f.parse = [t](std::string_view s) { return t->parse_figure(s); };
  return f;
}

IndexedMonoid torus_indexed(const std::shared_ptr<const Torus>& t, std::string name, FiberMonoid f) {
  IndexedMonoid im;
  im.name = std::move(name);
  im.base = t->group();
  im.fibers = {std::move(f)};
  im.action = [t](ArrowId g, std::uint64_t a) { return t->image(g, a); };
  return im;
}

}  // namespace

IndexedMonoid figure_fibration(std::shared_ptr<const Torus> t) {
  auto f = figure_fiber(t, "(P(T" + std::to_string(t->n()) + "),∪,∅)");
  f.op = [](std::uint64_t a, std::uint64_t b) { return a | b; };
  return torus_indexed(t, "figures", std::move(f));
}

IndexedMonoid tangram_fibration(std::shared_ptr<const Torus> t) {
  auto f = figure_fiber(t, "(P(T" + std::to_string(t->n()) + "),∪′,∅)");
  const std::uint64_t all = t->full();
  f.op = [all](std::uint64_t a, std::uint64_t b) { return (a & b) != 0 ? all : (a | b); };
  return torus_indexed(t, "tangram", std::move(f));
}

IndexedMonoidalPoset cover_fibration(std::shared_ptr<const Torus> t) {
  auto f = figure_fiber(t, "(P(T" + std::to_string(t->n()) + "),⊇,∪,∅)");
  f.op = [](std::uint64_t a, std::uint64_t b) { return a | b; };
  f.leq = [](std::uint64_t u, std::uint64_t a) { return (a & ~u) == 0; };
  return torus_indexed(t, "cover", std::move(f));
}

// ---------------------------------------------------------------------------
// Entailment searches

namespace {

using Figure = Torus::Figure;

// Distinct images of a figure under the group.
std::vector<Figure> orbit(const Torus& t, Figure a) {
  std::vector<Figure> out;
  std::set<Figure> seen;
  for (ArrowId g = 0; g < t.group_size(); ++g) {
    const Figure b = t.image(g, a);
    if (seen.insert(b).second) out.push_back(b);
  }
  return out;
}

// Cover the lowest uncovered cell of `remaining` with some unplaced piece.
// With `exact`, images must fit inside `remaining` (no overlap, nothing outside).
bool cell_search(const std::vector<std::vector<Figure>>& orbits, const std::vector<Figure>& pieces,
                 std::vector<bool>& placed, Figure remaining, bool exact) {
  if (remaining == 0) {
    if (!exact) return true;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (!placed[i] && pieces[i] != 0) return false;
    }
    return true;
  }
  const Figure cell = remaining & (~remaining + 1);
  std::set<Figure> tried;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (placed[i] || pieces[i] == 0 || !tried.insert(pieces[i]).second) continue;
    placed[i] = true;
    for (Figure img : orbits[i]) {
      if ((img & cell) == 0) continue;
      if (exact && (img & ~remaining) != 0) continue;
      if (cell_search(orbits, pieces, placed, remaining & ~img, exact)) {
        placed[i] = false;
        return true;
      }
    }
    placed[i] = false;
  }
  return false;
}

// Lexicographic enumeration of placements, pruned by `viable(slot, partial)`.
void enumerate_placements(const Torus& t, const std::vector<Figure>& pieces,
                          const std::function<Figure(Figure, Figure)>& combine,
                          const std::function<bool(std::size_t, Figure)>& viable,
                          const std::function<bool(Figure)>& accept, std::size_t limit,
                          Entailment& out, bool collapse_empty = false) {
  std::vector<ArrowId> legs;
  bool stop = false;
  std::function<void(std::size_t, Figure)> rec = [&](std::size_t i, Figure acc) {
    if (stop) return;
    if (i == pieces.size()) {
      if (!accept(acc)) return;
      if (out.witnesses.size() == limit) {
        out.truncated = true;
        stop = true;
        return;
      }
      out.witnesses.push_back(legs);
      return;
    }
    const std::size_t choices = collapse_empty && pieces[i] == 0 ? 1 : t.group_size();
    for (ArrowId g = 0; g < choices && !stop; ++g) {
      const Figure img = t.image(g, pieces[i]);
      const Figure next = i == 0 ? img : combine(acc, img);
      if (!viable(i + 1, next)) continue;
      legs.push_back(g);
      rec(i + 1, next);
      legs.pop_back();
    }
  };
  rec(0, 0);
}

void check_figures(const Torus& t, const std::vector<Figure>& pieces, Figure target) {
  const Figure all = t.full();
  for (Figure p : pieces) {
    if ((p & ~all) != 0) throw SchemaError("/pieces", "figure outside the grid");
  }
  if ((target & ~all) != 0) throw SchemaError("/target", "figure outside the grid");
}

}  // namespace

Entailment tangram_entails(const Torus& t, const std::vector<Figure>& pieces, Figure target,
                           std::size_t witness_limit) {
  check_figures(t, pieces, target);
  const Figure all = t.full();
  auto combine = [all](Figure a, Figure b) { return (a & b) != 0 ? all : (a | b); };
  Entailment out;
  if (target == all) {
    // X absorbs: any overlap reaches it, so search placements directly.
    Entailment probe;
    enumerate_placements(
        t, pieces, combine, [](std::size_t, Figure) { return true; },
        [all](Figure a) { return a == all; }, 0, probe, true);
    out.holds = probe.truncated;
  } else {
    std::vector<std::vector<Figure>> orbits;
    for (Figure p : pieces) orbits.push_back(orbit(t, p));
    std::vector<bool> placed(pieces.size(), false);
    out.holds = cell_search(orbits, pieces, placed, target, true);
  }
  if (!out.holds || witness_limit == 0) {
    out.truncated = out.holds;
    return out;
  }
  enumerate_placements(
      t, pieces, combine,
      [&](std::size_t, Figure acc) { return target == all || (acc & ~target) == 0; },
      [target](Figure a) { return a == target; }, witness_limit, out);
  return out;
}

Entailment cover_entails(const Torus& t, const std::vector<Figure>& pieces, Figure target,
                         std::size_t witness_limit) {
  check_figures(t, pieces, target);
  std::vector<std::vector<Figure>> orbits;
  for (Figure p : pieces) orbits.push_back(orbit(t, p));
  std::vector<bool> placed(pieces.size(), false);
  Entailment out;
  out.holds = cell_search(orbits, pieces, placed, target, false);
  if (!out.holds || witness_limit == 0) {
    out.truncated = out.holds;
    return out;
  }
  // sizes of the pieces still to be placed after slot i
  std::vector<int> tail(pieces.size() + 1, 0);
  for (std::size_t i = pieces.size(); i > 0; --i) tail[i - 1] = tail[i] + std::popcount(pieces[i - 1]);
  enumerate_placements(
      t, pieces, [](Figure a, Figure b) { return a | b; },
      [&](std::size_t i, Figure acc) { return std::popcount(target & ~acc) <= tail[i]; },
      [target](Figure a) { return (target & ~a) == 0; }, witness_limit, out);
  return out;
}

}  // namespace multikat
