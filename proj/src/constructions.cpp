#include "multikat/constructions.hpp"

#include <algorithm>
#include <limits>

#include "multikat/errors.hpp"

namespace multikat {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

void check_cap(std::uint64_t size, std::size_t cap, const std::string& what) {
  if (size > cap) {
    throw EnumerationOverflow(what + " has " +
                              (size == kSaturated ? std::string("too many") : std::to_string(size)) +
                              " elements, cap is " + std::to_string(cap));
  }
}

// Calls visit(choice) for every tuple in the product of the given option
// lists, last coordinate varying fastest.
template <typename T, typename Visit>
void for_each_choice(const std::vector<const std::vector<T>*>& options, Visit&& visit) {
  for (const auto* o : options) {
    if (o->empty()) return;
  }
  std::vector<std::size_t> idx(options.size(), 0);
  std::vector<T> choice;
  choice.reserve(options.size());
  for (std::size_t i = 0; i < options.size(); ++i) choice.push_back((*options[i])[0]);
  while (true) {
    visit(choice);
    std::size_t i = options.size();
    while (i > 0) {
      --i;
      if (++idx[i] < options[i]->size()) {
        choice[i] = (*options[i])[idx[i]];
        break;
      }
      idx[i] = 0;
      choice[i] = (*options[i])[0];
      if (i == 0) return;
    }
    if (options.empty()) return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// C_▶

CoconeMulticategory::CoconeMulticategory(std::shared_ptr<const FinCategory> base)
    : base_(std::move(base)) {}

std::vector<MultiArrow> CoconeMulticategory::hom(const ObjList& dom, ObjId cod,
                                                 std::size_t cap) const {
  std::vector<const std::vector<ArrowId>*> legs;
  std::uint64_t size = 1;
  for (ObjId x : dom) {
    legs.push_back(&base_->hom(x.value, cod.value));
    size = mul_sat(size, legs.back()->size());
  }
  check_cap(size, cap, name() + " hom(" + describe_list(dom) + "; " + object_name(cod) + ")");
  std::vector<MultiArrow> out;
  out.reserve(size);
  for_each_choice<ArrowId>(legs, [&](const std::vector<ArrowId>& choice) {
    out.push_back(MultiArrow{dom, cod, Label(choice.begin(), choice.end())});
  });
  return out;
}

bool CoconeMulticategory::contains(const MultiArrow& f) const {
  if (f.cod.value >= base_->object_count() || f.label.size() != f.dom.size()) return false;
  for (std::size_t i = 0; i < f.dom.size(); ++i) {
    const auto a = f.label[i];
    if (a < 0 || static_cast<std::size_t>(a) >= base_->arrow_count()) return false;
    const auto& arrow = base_->arrow(static_cast<ArrowId>(a));
    if (arrow.dom != f.dom[i].value || arrow.cod != f.cod.value) return false;
  }
  return true;
}

MultiArrow CoconeMulticategory::identity(ObjId x) const {
  return MultiArrow{{x}, x, {static_cast<std::int64_t>(base_->identity(x.value))}};
}

std::string CoconeMulticategory::describe_label(const MultiArrow& f) const {
  std::string s = "<";
  for (std::size_t i = 0; i < f.label.size(); ++i) {
    if (i > 0) s += ",";
    const auto a = f.label[i];
    s += (a >= 0 && static_cast<std::size_t>(a) < base_->arrow_count())
             ? base_->arrow(static_cast<ArrowId>(a)).name
             : "?";
  }
  return s + ">";
}

MultiArrow CoconeMulticategory::arrow(const std::vector<ArrowId>& legs, ObjIndex cod) const {
  MultiArrow f{{}, ObjId{cod}, {}};
  for (ArrowId a : legs) {
    if (base_->cod(a) != cod) {
      throw ObjectMismatch(name() + ": leg " + base_->arrow(a).name + " does not end at " +
                           base_->objects().at(cod));
    }
    f.dom.push_back(ObjId{base_->dom(a)});
    f.label.push_back(static_cast<std::int64_t>(a));
  }
  return f;
}

std::vector<ArrowId> CoconeMulticategory::legs(const MultiArrow& f) {
  return std::vector<ArrowId>(f.label.begin(), f.label.end());
}

MultiArrow CoconeMulticategory::do_compose(const MultiArrow& f,
                                           std::span<const MultiArrow> args) const {
  MultiArrow out{{}, f.cod, {}};
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto outer = static_cast<ArrowId>(f.label[i]);
    for (std::size_t j = 0; j < args[i].label.size(); ++j) {
      out.dom.push_back(args[i].dom[j]);
      out.label.push_back(static_cast<std::int64_t>(
          base_->compose(outer, static_cast<ArrowId>(args[i].label[j]))));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// C_!

LinearMulticategory::LinearMulticategory(std::shared_ptr<const FinCategory> base)
    : base_(std::move(base)) {}

std::vector<MultiArrow> LinearMulticategory::hom(const ObjList& dom, ObjId cod,
                                                 std::size_t cap) const {
  std::vector<MultiArrow> out;
  if (dom.size() != 1) return out;
  const auto& h = base_->hom(dom[0].value, cod.value);
  check_cap(h.size(), cap, name() + " hom");
  for (ArrowId a : h) out.push_back(MultiArrow{dom, cod, {static_cast<std::int64_t>(a)}});
  return out;
}

bool LinearMulticategory::contains(const MultiArrow& f) const {
  if (f.dom.size() != 1 || f.label.size() != 1) return false;
  const auto a = f.label[0];
  if (a < 0 || static_cast<std::size_t>(a) >= base_->arrow_count()) return false;
  const auto& arrow = base_->arrow(static_cast<ArrowId>(a));
  return arrow.dom == f.dom[0].value && arrow.cod == f.cod.value;
}

MultiArrow LinearMulticategory::identity(ObjId x) const {
  return MultiArrow{{x}, x, {static_cast<std::int64_t>(base_->identity(x.value))}};
}

std::string LinearMulticategory::describe_label(const MultiArrow& f) const {
  if (f.label.size() != 1) return "?";
  return base_->arrow(static_cast<ArrowId>(f.label[0])).name;
}

MultiArrow LinearMulticategory::do_compose(const MultiArrow& f,
                                           std::span<const MultiArrow> args) const {
  const auto g = static_cast<ArrowId>(f.label[0]);
  const auto h = static_cast<ArrowId>(args[0].label[0]);
  return MultiArrow{args[0].dom, f.cod, {static_cast<std::int64_t>(base_->compose(g, h))}};
}

// ---------------------------------------------------------------------------
// M × N

ProductMulticategory::ProductMulticategory(MulticategoryPtr first, MulticategoryPtr second)
    : first_(std::move(first)), second_(std::move(second)) {}

std::uint64_t ProductMulticategory::object_count() const {
  return mul_sat(first_->object_count(), second_->object_count());
}

ObjId ProductMulticategory::pair(ObjId x, ObjId y) const {
  return ObjId{x.value * second_->object_count() + y.value};
}

ObjId ProductMulticategory::first_object(ObjId p) const {
  return ObjId{p.value / second_->object_count()};
}

ObjId ProductMulticategory::second_object(ObjId p) const {
  return ObjId{p.value % second_->object_count()};
}

std::string ProductMulticategory::object_name(ObjId x) const {
  return "(" + first_->object_name(first_object(x)) + "," +
         second_->object_name(second_object(x)) + ")";
}

MultiArrow ProductMulticategory::pair(const MultiArrow& f, const MultiArrow& g) const {
  if (f.arity() != g.arity()) throw ArityMismatch(name() + ": paired arrows differ in arity");
  MultiArrow out{{}, pair(f.cod, g.cod), {}};
  for (std::size_t i = 0; i < f.arity(); ++i) out.dom.push_back(pair(f.dom[i], g.dom[i]));
  out.label.reserve(1 + f.label.size() + g.label.size());
  out.label.push_back(static_cast<std::int64_t>(f.label.size()));
  out.label.insert(out.label.end(), f.label.begin(), f.label.end());
  out.label.insert(out.label.end(), g.label.begin(), g.label.end());
  return out;
}

MultiArrow ProductMulticategory::first_arrow(const MultiArrow& f) const {
  MultiArrow out{{}, first_object(f.cod), {}};
  for (ObjId x : f.dom) out.dom.push_back(first_object(x));
  const auto n = static_cast<std::size_t>(f.label.at(0));
  out.label.assign(f.label.begin() + 1, f.label.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  return out;
}

MultiArrow ProductMulticategory::second_arrow(const MultiArrow& f) const {
  MultiArrow out{{}, second_object(f.cod), {}};
  for (ObjId x : f.dom) out.dom.push_back(second_object(x));
  const auto n = static_cast<std::size_t>(f.label.at(0));
  out.label.assign(f.label.begin() + 1 + static_cast<std::ptrdiff_t>(n), f.label.end());
  return out;
}

std::vector<MultiArrow> ProductMulticategory::hom(const ObjList& dom, ObjId cod,
                                                  std::size_t cap) const {
  ObjList d1, d2;
  for (ObjId x : dom) {
    d1.push_back(first_object(x));
    d2.push_back(second_object(x));
  }
  const auto h1 = first_->hom(d1, first_object(cod), cap);
  const auto h2 = second_->hom(d2, second_object(cod), cap);
  check_cap(mul_sat(h1.size(), h2.size()), cap, name() + " hom");
  std::vector<MultiArrow> out;
  out.reserve(h1.size() * h2.size());
  for (const auto& f : h1) {
    for (const auto& g : h2) out.push_back(pair(f, g));
  }
  return out;
}

bool ProductMulticategory::contains(const MultiArrow& f) const {
  if (f.label.empty() || f.label[0] < 0 ||
      static_cast<std::size_t>(f.label[0]) + 1 > f.label.size()) {
    return false;
  }
  if (!has_object(f.cod)) return false;
  for (ObjId x : f.dom) {
    if (!has_object(x)) return false;
  }
  return first_->contains(first_arrow(f)) && second_->contains(second_arrow(f));
}

MultiArrow ProductMulticategory::identity(ObjId x) const {
  return pair(first_->identity(first_object(x)), second_->identity(second_object(x)));
}

std::string ProductMulticategory::describe_label(const MultiArrow& f) const {
  return "(" + first_->describe_label(first_arrow(f)) + "," +
         second_->describe_label(second_arrow(f)) + ")";
}

MultiArrow ProductMulticategory::do_compose(const MultiArrow& f,
                                            std::span<const MultiArrow> args) const {
  std::vector<MultiArrow> a1, a2;
  a1.reserve(args.size());
  a2.reserve(args.size());
  for (const auto& g : args) {
    a1.push_back(first_arrow(g));
    a2.push_back(second_arrow(g));
  }
  return pair(first_->compose_raw(first_arrow(f), a1), second_->compose_raw(second_arrow(f), a2));
}

std::pair<MultiFunctor, MultiFunctor> product_projections(
    const std::shared_ptr<const ProductMulticategory>& p) {
  MultiFunctor pi1{"π1", p, MulticategoryPtr(p, &p->first()),
                   [p](ObjId x) { return p->first_object(x); },
                   [p](const MultiArrow& f) { return p->first_arrow(f); }};
  MultiFunctor pi2{"π2", p, MulticategoryPtr(p, &p->second()),
                   [p](ObjId x) { return p->second_object(x); },
                   [p](const MultiArrow& f) { return p->second_arrow(f); }};
  return {std::move(pi1), std::move(pi2)};
}

// ---------------------------------------------------------------------------
// Set_×

void for_each_point(std::span<const std::size_t> sizes,
                    const std::function<void(std::span<const std::size_t>)>& visit) {
  for (auto s : sizes) {
    if (s == 0) return;
  }
  std::vector<std::size_t> point(sizes.size(), 0);
  while (true) {
    visit(point);
    std::size_t i = sizes.size();
    while (true) {
      if (i == 0) return;
      --i;
      if (++point[i] < sizes[i]) break;
      point[i] = 0;
    }
  }
}

SetxMulticategory::SetxMulticategory(std::vector<FinSetObj> sets, std::string name)
    : name_(std::move(name)), sets_(std::move(sets)) {
  for (const auto& s : sets_) validate_finset(s);
}

std::uint64_t SetxMulticategory::product_size(const ObjList& dom) const {
  std::uint64_t n = 1;
  for (ObjId x : dom) n = mul_sat(n, sets_.at(x.value).size());
  return n;
}

std::vector<MultiArrow> SetxMulticategory::hom(const ObjList& dom, ObjId cod,
                                               std::size_t cap) const {
  const std::uint64_t points = product_size(dom);
  const std::uint64_t values = sets_.at(cod.value).size();
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < points && count != kSaturated; ++i) count = mul_sat(count, values);
  if (points == kSaturated) count = values <= 1 ? values : kSaturated;
  check_cap(count, cap, name_ + " hom(" + describe_list(dom) + "; " + object_name(cod) + ")");
  std::vector<MultiArrow> out;
  if (count == 0) return out;
  out.reserve(count);
  std::vector<std::size_t> sizes(points, values);
  for_each_point(sizes, [&](std::span<const std::size_t> table) {
    out.push_back(MultiArrow{dom, cod, Label(table.begin(), table.end())});
  });
  return out;
}

bool SetxMulticategory::contains(const MultiArrow& f) const {
  if (!has_object(f.cod)) return false;
  for (ObjId x : f.dom) {
    if (!has_object(x)) return false;
  }
  if (f.label.size() != product_size(f.dom)) return false;
  const auto values = static_cast<std::int64_t>(sets_[f.cod.value].size());
  return std::all_of(f.label.begin(), f.label.end(),
                     [values](std::int64_t v) { return v >= 0 && v < values; });
}

MultiArrow SetxMulticategory::identity(ObjId x) const {
  MultiArrow f{{x}, x, {}};
  for (std::size_t i = 0; i < sets_.at(x.value).size(); ++i) {
    f.label.push_back(static_cast<std::int64_t>(i));
  }
  return f;
}

std::string SetxMulticategory::describe_label(const MultiArrow& f) const {
  std::string s = "[";
  for (std::size_t i = 0; i < f.label.size(); ++i) {
    if (i > 0) s += ",";
    const auto v = f.label[i];
    const auto& els = sets_.at(f.cod.value).elements;
    s += (v >= 0 && static_cast<std::size_t>(v) < els.size()) ? els[static_cast<std::size_t>(v)]
                                                               : "?";
  }
  return s + "]";
}

MultiArrow SetxMulticategory::tabulate(
    const ObjList& dom, ObjId cod,
    const std::function<std::size_t(std::span<const std::size_t>)>& fn) const {
  MultiArrow f{dom, cod, {}};
  std::vector<std::size_t> sizes;
  for (ObjId x : dom) sizes.push_back(sets_.at(x.value).size());
  f.label.reserve(product_size(dom));
  for_each_point(sizes, [&](std::span<const std::size_t> p) {
    f.label.push_back(static_cast<std::int64_t>(fn(p)));
  });
  return f;
}

std::size_t SetxMulticategory::apply(const MultiArrow& f, std::span<const std::size_t> point) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    index = index * sets_[f.dom[i].value].size() + point[i];
  }
  return static_cast<std::size_t>(f.label[index]);
}

MultiArrow SetxMulticategory::do_compose(const MultiArrow& f,
                                         std::span<const MultiArrow> args) const {
  ObjList dom;
  for (const auto& g : args) dom.insert(dom.end(), g.dom.begin(), g.dom.end());
  std::vector<std::size_t> inner(args.size());
  return tabulate(dom, f.cod, [&](std::span<const std::size_t> p) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      inner[i] = apply(args[i], p.subspan(pos, args[i].arity()));
      pos += args[i].arity();
    }
    return apply(f, inner);
  });
}

// ---------------------------------------------------------------------------
// Factories and functors

std::shared_ptr<const CoconeMulticategory> discrete_cocone(std::shared_ptr<const FinCategory> c) {
  return std::make_shared<const CoconeMulticategory>(std::move(c));
}

std::shared_ptr<const LinearMulticategory> linear(std::shared_ptr<const FinCategory> c) {
  return std::make_shared<const LinearMulticategory>(std::move(c));
}

std::shared_ptr<const ProductMulticategory> product(MulticategoryPtr m, MulticategoryPtr n) {
  return std::make_shared<const ProductMulticategory>(std::move(m), std::move(n));
}

std::shared_ptr<const SetxMulticategory> rep_of_finsets(std::vector<FinSetObj> sets) {
  return std::make_shared<const SetxMulticategory>(std::move(sets));
}

std::shared_ptr<const CoconeMulticategory> terminal_multicategory() {
  return discrete_cocone(std::make_shared<const FinCategory>(terminal_category()));
}

std::shared_ptr<const LinearMulticategory> unit_multicategory() {
  return linear(std::make_shared<const FinCategory>(terminal_category()));
}

MultiFunctor cocone_functor(const FinFunctor& f, std::shared_ptr<const CoconeMulticategory> source,
                            std::shared_ptr<const CoconeMulticategory> target) {
  if (!source) source = discrete_cocone(f.source);
  if (!target) target = discrete_cocone(f.target);
  auto objects = f.on_objects;
  auto arrows = f.on_arrows;
  return MultiFunctor{
      f.source->name() + "→" + f.target->name() + "_▶", source, target,
      [objects](ObjId x) { return ObjId{objects.at(x.value)}; },
      [objects, arrows](const MultiArrow& g) {
        MultiArrow out{{}, ObjId{objects.at(g.cod.value)}, {}};
        for (ObjId x : g.dom) out.dom.push_back(ObjId{objects.at(x.value)});
        for (auto a : g.label) {
          out.label.push_back(static_cast<std::int64_t>(arrows.at(static_cast<std::size_t>(a))));
        }
        return out;
      }};
}

// ---------------------------------------------------------------------------
// Monoids

MultiArrow monoid_nary(const Multicategory& m, const MonoidObject& mon, std::size_t n) {
  if (n == 0) return mon.unit;
  if (n == 1) return m.identity(mon.carrier);
  MultiArrow acc = mon.mult;
  for (std::size_t k = 3; k <= n; ++k) {
    acc = m.compose_raw(mon.mult, std::vector<MultiArrow>{acc, m.identity(mon.carrier)});
  }
  return acc;
}

bool is_monoid(const Multicategory& m, const MonoidObject& mon) {
  const ObjId x = mon.carrier;
  if (!mon.unit.dom.empty() || mon.unit.cod != x || !m.contains(mon.unit)) return false;
  if (mon.mult.dom != ObjList{x, x} || mon.mult.cod != x || !m.contains(mon.mult)) return false;
  const MultiArrow id = m.identity(x);
  const MultiArrow left = m.compose_raw(mon.mult, std::vector<MultiArrow>{mon.mult, id});
  const MultiArrow right = m.compose_raw(mon.mult, std::vector<MultiArrow>{id, mon.mult});
  if (left != right) return false;
  if (m.compose_raw(mon.mult, std::vector<MultiArrow>{mon.unit, id}) != id) return false;
  return m.compose_raw(mon.mult, std::vector<MultiArrow>{id, mon.unit}) == id;
}

bool is_monoid_morphism(const Multicategory& m, const MonoidObject& from, const MonoidObject& to,
                        const MultiArrow& f) {
  if (f.dom != ObjList{from.carrier} || f.cod != to.carrier || !m.contains(f)) return false;
  const MultiArrow lhs = m.compose_raw(f, std::vector<MultiArrow>{from.mult});
  const MultiArrow rhs = m.compose_raw(to.mult, std::vector<MultiArrow>{f, f});
  if (lhs != rhs) return false;
  return m.compose_raw(f, std::vector<MultiArrow>{from.unit}) == to.unit;
}

std::optional<ObjIndex> MonoidCategory::find_object(const MonoidObject& mon) const {
  auto it = std::find(objects.begin(), objects.end(), mon);
  if (it == objects.end()) return std::nullopt;
  return static_cast<ObjIndex>(it - objects.begin());
}

std::optional<ArrowId> MonoidCategory::find_morphism(ObjIndex from, ObjIndex to,
                                                     const MultiArrow& f) const {
  for (ArrowId a : category->hom(from, to)) {
    if (morphisms[a] == f) return a;
  }
  return std::nullopt;
}

MonoidCategory monoid_category(MulticategoryPtr m, std::size_t cap,
                               const std::function<bool(const MonoidObject&)>& admit) {
  MonoidCategory out;
  out.ambient = m;
  const std::uint64_t k = m->object_count();
  if (k > cap) throw EnumerationOverflow(m->name() + ": too many objects for monoid search");
  for (std::uint64_t i = 0; i < k; ++i) {
    const ObjId x{i};
    const auto units = m->hom({}, x, cap);
    const auto mults = m->hom({x, x}, x, cap);
    for (const auto& u : units) {
      for (const auto& mu : mults) {
        MonoidObject mon{x, u, mu};
        if (is_monoid(*m, mon) && (!admit || admit(mon))) out.objects.push_back(std::move(mon));
      }
    }
  }

  std::vector<std::string> names;
  for (const auto& mon : out.objects) {
    names.push_back(m->object_name(mon.carrier) + "{" + m->describe_label(mon.unit) + "," +
                    m->describe_label(mon.mult) + "}");
  }
  std::vector<FinCategory::Arrow> arrows;
  std::vector<ArrowId> ids(out.objects.size());
  std::map<std::tuple<ObjIndex, ObjIndex, MultiArrow>, ArrowId> index;
  for (ObjIndex a = 0; a < out.objects.size(); ++a) {
    for (ObjIndex b = 0; b < out.objects.size(); ++b) {
      const auto& from = out.objects[a];
      const auto& to = out.objects[b];
      for (auto& f : m->hom({from.carrier}, to.carrier, cap)) {
        if (!is_monoid_morphism(*m, from, to, f)) continue;
        if (a == b && f == m->identity(from.carrier)) ids[a] = arrows.size();
        index.emplace(std::make_tuple(a, b, f), arrows.size());
        arrows.push_back({m->describe_label(f), a, b});
        out.morphisms.push_back(std::move(f));
      }
    }
  }
  const std::size_t n = arrows.size();
  std::vector<std::int64_t> comp(n * n, FinCategory::kUndefined);
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId f = 0; f < n; ++f) {
      if (arrows[f].cod != arrows[g].dom) continue;
      const MultiArrow gf = m->compose_raw(out.morphisms[g], std::vector<MultiArrow>{out.morphisms[f]});
      auto it = index.find(std::make_tuple(arrows[f].dom, arrows[g].cod, gf));
      if (it == index.end()) {
        throw MonoidLawFailure(m->name() + ": composite of monoid morphisms is not one");
      }
      comp[g * n + f] = static_cast<std::int64_t>(it->second);
    }
  }
  out.category = std::make_shared<const FinCategory>("Mon(" + m->name() + ")", std::move(names),
                                                     std::move(arrows), std::move(ids),
                                                     std::move(comp));
  return out;
}

LawReport check_monoid_valued_functor(const MonoidValuedFunctor& g) {
  const FinCategory& c = *g.source;
  const Multicategory& n = *g.target;
  LawReport report("functor " + c.name() + " → Mon(" + n.name() + ")");
  if (g.on_objects.size() != c.object_count() || g.on_arrows.size() != c.arrow_count()) {
    report.fail("shape", "object or arrow map has the wrong length");
    return report;
  }
  for (ObjIndex x = 0; x < c.object_count(); ++x) {
    report.expect(is_monoid(n, g.on_objects[x]), "monoid", [&] {
      return "image of " + c.objects()[x] + " is not a monoid in " + n.name();
    });
  }
  if (!report.passed()) return report;
  for (ArrowId a = 0; a < c.arrow_count(); ++a) {
    const auto& arr = c.arrow(a);
    report.expect(
        is_monoid_morphism(n, g.on_objects[arr.dom], g.on_objects[arr.cod], g.on_arrows[a]),
        "monoid morphism", [&] {
          return "image of " + arr.name + " = " + n.describe(g.on_arrows[a]) +
                 " is not a monoid morphism";
        });
  }
  if (!report.passed()) return report;
  for (ObjIndex x = 0; x < c.object_count(); ++x) {
    report.expect(g.on_arrows[c.identity(x)] == n.identity(g.on_objects[x].carrier), "identity",
                  [&] { return "image of id_" + c.objects()[x] + " is not an identity"; });
  }
  for (ArrowId h = 0; h < c.arrow_count(); ++h) {
    for (ArrowId f = 0; f < c.arrow_count(); ++f) {
      if (c.cod(f) != c.dom(h)) continue;
      const MultiArrow lhs = g.on_arrows[c.compose(h, f)];
      const MultiArrow rhs = n.compose_raw(g.on_arrows[h], std::vector<MultiArrow>{g.on_arrows[f]});
      report.expect(lhs == rhs, "composition", [&] {
        return "G(" + c.arrow(h).name + "∘" + c.arrow(f).name + ") = " + n.describe_label(lhs) +
               " but G" + c.arrow(h).name + "∘G" + c.arrow(f).name + " = " + n.describe_label(rhs);
      });
    }
  }
  return report;
}

FinFunctor as_fin_functor(const MonoidValuedFunctor& g, const MonoidCategory& mon) {
  FinFunctor f;
  f.source = g.source;
  f.target = mon.category;
  for (const auto& m : g.on_objects) {
    auto idx = mon.find_object(m);
    if (!idx) throw MonoidLawFailure("object image is not in the monoid inventory");
    f.on_objects.push_back(*idx);
  }
  for (ArrowId a = 0; a < g.source->arrow_count(); ++a) {
    const auto& arr = g.source->arrow(a);
    auto idx = mon.find_morphism(f.on_objects[arr.dom], f.on_objects[arr.cod], g.on_arrows[a]);
    if (!idx) throw MonoidLawFailure("image of " + arr.name + " is not a monoid morphism");
    f.on_arrows.push_back(*idx);
  }
  return f;
}

MonoidValuedFunctor transpose_to_cat(const MultiFunctor& f) {
  auto cone = std::dynamic_pointer_cast<const CoconeMulticategory>(f.source);
  if (!cone) throw SchemaError("", "transpose_to_cat needs a functor out of a discrete cocone");
  const FinCategory& c = cone->base();
  MonoidValuedFunctor g;
  g.source = cone->base_ptr();
  g.target = f.target;
  for (ObjIndex x = 0; x < c.object_count(); ++x) {
    const ArrowId id = c.identity(x);
    g.on_objects.push_back(MonoidObject{f.on_objects(ObjId{x}), f.on_arrows(cone->arrow({}, x)),
                                        f.on_arrows(cone->arrow({id, id}, x))});
  }
  for (ArrowId a = 0; a < c.arrow_count(); ++a) {
    g.on_arrows.push_back(f.on_arrows(cone->arrow({a}, c.cod(a))));
  }
  const LawReport report = check_monoid_valued_functor(g);
  if (!report.passed()) {
    throw MonoidLawFailure("transpose of " + f.name + ": [" + report.violations()[0].law + "] " +
                           report.violations()[0].instance);
  }
  return g;
}

MultiFunctor transpose_to_mlt(const MonoidValuedFunctor& g,
                              std::shared_ptr<const CoconeMulticategory> source) {
  if (!source) source = discrete_cocone(g.source);
  auto objects = g.on_objects;
  auto arrows = g.on_arrows;
  MulticategoryPtr target = g.target;
  return MultiFunctor{
      "transpose", source, target,
      [objects](ObjId x) { return objects.at(x.value).carrier; },
      [objects, arrows, target](const MultiArrow& f) {
        const MonoidObject& mon = objects.at(f.cod.value);
        std::vector<MultiArrow> images;
        images.reserve(f.label.size());
        for (auto a : f.label) images.push_back(arrows.at(static_cast<std::size_t>(a)));
        return target->compose_raw(monoid_nary(*target, mon, f.arity()), images);
      }};
}

std::vector<MonoidValuedFunctor> enumerate_monoid_valued_functors(
    std::shared_ptr<const FinCategory> c, const MonoidCategory& mon) {
  std::vector<MonoidValuedFunctor> out;
  const FinCategory& m = *mon.category;
  const std::size_t k = c->object_count();
  const std::size_t n = c->arrow_count();
  if (m.object_count() == 0 && k > 0) return out;
  std::vector<ObjIndex> objs(k, 0);
  std::vector<ArrowId> arrs(n, 0);

  // Every composable pair (h, f) is checked once h, f and h∘f are all assigned.
  std::vector<std::vector<std::pair<ArrowId, ArrowId>>> checks(n);
  for (ArrowId h = 0; h < n; ++h) {
    for (ArrowId f = 0; f < n; ++f) {
      if (c->cod(f) != c->dom(h)) continue;
      const ArrowId hf = c->compose(h, f);
      checks[std::max({h, f, hf})].emplace_back(h, f);
    }
  }
  std::function<void(ArrowId)> assign = [&](ArrowId a) {
    if (a == n) {
      MonoidValuedFunctor g{c, mon.ambient, {}, {}};
      for (ObjIndex x = 0; x < k; ++x) g.on_objects.push_back(mon.objects[objs[x]]);
      for (ArrowId b = 0; b < n; ++b) g.on_arrows.push_back(mon.morphisms[arrs[b]]);
      out.push_back(std::move(g));
      return;
    }
    const auto& arr = c->arrow(a);
    std::vector<ArrowId> options;
    if (c->identity(arr.dom) == a) {
      options.push_back(m.identity(objs[arr.dom]));
    } else {
      options = m.hom(objs[arr.dom], objs[arr.cod]);
    }
    for (ArrowId choice : options) {
      arrs[a] = choice;
      bool ok = true;
      for (const auto& [h, f] : checks[a]) {
        ok &= arrs[c->compose(h, f)] == m.compose(arrs[h], arrs[f]);
      }
      if (ok) assign(a + 1);
    }
  };
  std::function<void(ObjIndex)> pick = [&](ObjIndex x) {
    if (x == k) {
      assign(0);
      return;
    }
    for (ObjIndex i = 0; i < m.object_count(); ++i) {
      objs[x] = i;
      pick(x + 1);
    }
  };
  pick(0);
  return out;
}

FinFunctor transpose_linear_to_cat(const MultiFunctor& f, std::size_t cap) {
  auto lin = std::dynamic_pointer_cast<const LinearMulticategory>(f.source);
  if (!lin) throw SchemaError("", "transpose_linear_to_cat needs a functor out of C_!");
  const FinCategory& c = lin->base();
  const auto unary = unary_arrows(*f.target, cap);
  std::map<MultiArrow, ArrowId> index;
  for (ArrowId a = 0; a < unary.size(); ++a) index.emplace(unary[a], a);
  FinFunctor g;
  g.source = std::shared_ptr<const FinCategory>(lin, &lin->base());
  g.target = std::make_shared<const FinCategory>(underlying_category(*f.target, cap));
  for (ObjIndex x = 0; x < c.object_count(); ++x) {
    g.on_objects.push_back(f.on_objects(ObjId{x}).value);
  }
  for (ArrowId a = 0; a < c.arrow_count(); ++a) {
    const MultiArrow img = f.on_arrows(MultiArrow{{ObjId{c.dom(a)}}, ObjId{c.cod(a)},
                                                  {static_cast<std::int64_t>(a)}});
    auto it = index.find(img);
    if (it == index.end()) throw ForeignArrow("image of " + c.arrow(a).name + " is not unary");
    g.on_arrows.push_back(it->second);
  }
  return g;
}

MultiFunctor transpose_linear_to_mlt(const FinFunctor& g, MulticategoryPtr target,
                                     std::shared_ptr<const LinearMulticategory> source) {
  if (!source) source = linear(g.source);
  auto unary = unary_arrows(*target);
  auto objects = g.on_objects;
  auto arrows = g.on_arrows;
  return MultiFunctor{"linear transpose", source, target,
                      [objects](ObjId x) { return ObjId{objects.at(x.value)}; },
                      [unary, arrows](const MultiArrow& f) {
                        return unary.at(arrows.at(static_cast<std::size_t>(f.label.at(0))));
                      }};
}

}  // namespace multikat
