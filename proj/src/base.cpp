#include "multikat/base.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "multikat/errors.hpp"

namespace multikat {

namespace {

// Fills the composition table of a category from the identities plus an
// explicit list of non-identity composites (g, f, g∘f).
std::vector<std::int64_t> build_composition(
    const std::vector<FinCategory::Arrow>& arrows, const std::vector<ArrowId>& identities,
    const std::vector<std::tuple<ArrowId, ArrowId, ArrowId>>& composites) {
  const std::size_t n = arrows.size();
  std::vector<std::int64_t> table(n * n, FinCategory::kUndefined);
  for (ArrowId a = 0; a < n; ++a) {
    table[identities[arrows[a].cod] * n + a] = static_cast<std::int64_t>(a);
    table[a * n + identities[arrows[a].dom]] = static_cast<std::int64_t>(a);
  }
  for (const auto& [g, f, gf] : composites) table[g * n + f] = static_cast<std::int64_t>(gf);
  return table;
}

}  // namespace

FinCategory::FinCategory(std::string name, std::vector<std::string> objects,
                         std::vector<Arrow> arrows, std::vector<ArrowId> identities,
                         std::vector<std::int64_t> composition)
    : name_(std::move(name)),
      objects_(std::move(objects)),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      composition_(std::move(composition)) {
  const std::size_t n = arrows_.size();
  const std::size_t k = objects_.size();
  if (identities_.size() != k) {
    throw SchemaError("", "category " + name_ + ": one identity per object required");
  }
  for (const auto& a : arrows_) {
    if (a.dom >= k || a.cod >= k) {
      throw SchemaError("", "category " + name_ + ": arrow " + a.name + " has unknown endpoint");
    }
  }
  for (ObjIndex x = 0; x < k; ++x) {
    const ArrowId id = identities_[x];
    if (id >= n || arrows_[id].dom != x || arrows_[id].cod != x) {
      throw SchemaError("", "category " + name_ + ": identity of " + objects_[x] +
                                " is not an endo-arrow of it");
    }
  }
  if (composition_.size() != n * n) {
    throw SchemaError("", "category " + name_ + ": composition table has wrong size");
  }
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId f = 0; f < n; ++f) {
      if (arrows_[f].cod != arrows_[g].dom) continue;
      const auto r = composition_[g * n + f];
      if (r < 0 || static_cast<std::size_t>(r) >= n) {
        throw SchemaError("", "category " + name_ + ": composite " + arrows_[g].name + "∘" +
                                  arrows_[f].name + " missing");
      }
    }
  }
  homs_.assign(k * k, {});
  for (ArrowId a = 0; a < n; ++a) homs_[arrows_[a].dom * k + arrows_[a].cod].push_back(a);
}

ArrowId FinCategory::compose(ArrowId g, ArrowId f) const {
  if (arrow(f).cod != arrow(g).dom) {
    throw ObjectMismatch(name_ + ": cannot compose " + arrows_[g].name + "∘" + arrows_[f].name);
  }
  return static_cast<ArrowId>(composition_[g * arrows_.size() + f]);
}

const std::vector<ArrowId>& FinCategory::hom(ObjIndex x, ObjIndex y) const {
  return homs_.at(x * objects_.size() + y);
}

std::optional<ObjIndex> FinCategory::find_object(std::string_view name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<ObjIndex>(it - objects_.begin());
}

std::optional<ArrowId> FinCategory::find_arrow(std::string_view name) const {
  for (ArrowId a = 0; a < arrows_.size(); ++a) {
    if (arrows_[a].name == name) return a;
  }
  return std::nullopt;
}

bool FinCategory::operator==(const FinCategory& other) const {
  if (objects_ != other.objects_ || arrows_ != other.arrows_ ||
      identities_ != other.identities_) {
    return false;
  }
  const std::size_t n = arrows_.size();
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId f = 0; f < n; ++f) {
      if (arrows_[f].cod != arrows_[g].dom) continue;
      if (composition_[g * n + f] != other.composition_[g * n + f]) return false;
    }
  }
  return true;
}

LawReport check_category(const FinCategory& c) {
  LawReport report("category " + c.name());
  const std::size_t n = c.arrow_count();
  const auto& arrows = c.arrows();
  auto nm = [&](ArrowId a) { return arrows[a].name; };

  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId f = 0; f < n; ++f) {
      if (arrows[f].cod != arrows[g].dom) continue;
      const ArrowId gf = c.compose(g, f);
      report.expect(arrows[gf].dom == arrows[f].dom && arrows[gf].cod == arrows[g].cod, "typing",
                    [&] { return nm(g) + "∘" + nm(f) + " = " + nm(gf) + " has wrong endpoints"; });
    }
  }
  for (ArrowId f = 0; f < n; ++f) {
    const ArrowId left = c.compose(c.identity(arrows[f].cod), f);
    report.expect(left == f, "left identity",
                  [&] { return "id∘" + nm(f) + " = " + nm(left) + ", expected " + nm(f); });
    const ArrowId right = c.compose(f, c.identity(arrows[f].dom));
    report.expect(right == f, "right identity",
                  [&] { return nm(f) + "∘id = " + nm(right) + ", expected " + nm(f); });
  }
  for (ArrowId h = 0; h < n; ++h) {
    for (ArrowId g = 0; g < n; ++g) {
      if (arrows[g].cod != arrows[h].dom) continue;
      const ArrowId hg = c.compose(h, g);
      if (arrows[hg].dom != arrows[g].dom) continue;  // typing failure already reported
      for (ArrowId f = 0; f < n; ++f) {
        if (arrows[f].cod != arrows[g].dom) continue;
        const ArrowId gf = c.compose(g, f);
        if (arrows[gf].cod != arrows[h].dom) continue;
        const ArrowId lhs = c.compose(h, gf);
        const ArrowId rhs = c.compose(hg, f);
        report.expect(lhs == rhs, "associativity", [&] {
          return nm(h) + "∘(" + nm(g) + "∘" + nm(f) + ") = " + nm(lhs) + " but (" + nm(h) + "∘" +
                 nm(g) + ")∘" + nm(f) + " = " + nm(rhs);
        });
      }
    }
  }
  return report;
}

LawReport check_fin_functor(const FinFunctor& f) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  LawReport report("functor " + s.name() + " → " + t.name());
  if (f.on_objects.size() != s.object_count() || f.on_arrows.size() != s.arrow_count()) {
    report.fail("shape", "object or arrow map has the wrong length");
    return report;
  }
  for (auto x : f.on_objects) {
    if (x >= t.object_count()) {
      report.fail("shape", "object image out of range");
      return report;
    }
  }
  for (auto a : f.on_arrows) {
    if (a >= t.arrow_count()) {
      report.fail("shape", "arrow image out of range");
      return report;
    }
  }
  for (ArrowId a = 0; a < s.arrow_count(); ++a) {
    const auto& src = s.arrow(a);
    const auto& img = t.arrow(f.on_arrows[a]);
    report.expect(img.dom == f.on_objects[src.dom] && img.cod == f.on_objects[src.cod], "typing",
                  [&] { return "F(" + src.name + ") = " + img.name + " has wrong endpoints"; });
  }
  for (ObjIndex x = 0; x < s.object_count(); ++x) {
    report.expect(f.on_arrows[s.identity(x)] == t.identity(f.on_objects[x]), "identity",
                  [&] { return "F(id_" + s.objects()[x] + ") is not an identity"; });
  }
  if (!report.passed()) return report;
  for (ArrowId g = 0; g < s.arrow_count(); ++g) {
    for (ArrowId h = 0; h < s.arrow_count(); ++h) {
      if (s.cod(h) != s.dom(g)) continue;
      const ArrowId lhs = f.on_arrows[s.compose(g, h)];
      const ArrowId rhs = t.compose(f.on_arrows[g], f.on_arrows[h]);
      report.expect(lhs == rhs, "composition", [&] {
        return "F(" + s.arrow(g).name + "∘" + s.arrow(h).name + ") = " + t.arrow(lhs).name +
               " but F" + s.arrow(g).name + "∘F" + s.arrow(h).name + " = " + t.arrow(rhs).name;
      });
    }
  }
  return report;
}

FinFunctor identity_functor(std::shared_ptr<const FinCategory> c) {
  FinFunctor f;
  f.on_objects.resize(c->object_count());
  std::iota(f.on_objects.begin(), f.on_objects.end(), ObjIndex{0});
  f.on_arrows.resize(c->arrow_count());
  std::iota(f.on_arrows.begin(), f.on_arrows.end(), ArrowId{0});
  f.source = c;
  f.target = std::move(c);
  return f;
}

bool is_isomorphism(const FinFunctor& f) {
  if (!check_fin_functor(f).passed()) return false;
  if (f.source->object_count() != f.target->object_count() ||
      f.source->arrow_count() != f.target->arrow_count()) {
    return false;
  }
  const std::set<ObjIndex> objs(f.on_objects.begin(), f.on_objects.end());
  const std::set<ArrowId> arrs(f.on_arrows.begin(), f.on_arrows.end());
  return objs.size() == f.on_objects.size() && arrs.size() == f.on_arrows.size();
}

std::optional<std::size_t> FinMonoid::find(std::string_view element) const {
  auto it = std::find(carrier.begin(), carrier.end(), element);
  if (it == carrier.end()) return std::nullopt;
  return static_cast<std::size_t>(it - carrier.begin());
}

namespace {

bool monoid_shape_ok(const FinMonoid& m, LawReport& report) {
  const std::size_t n = m.size();
  bool ok = m.table.size() == n * n && m.unit < n && n > 0;
  if (ok) {
    ok = std::all_of(m.table.begin(), m.table.end(), [n](std::size_t v) { return v < n; });
  }
  if (!ok) report.fail("shape", "operation table or unit out of range");
  return ok;
}

}  // namespace

LawReport check_monoid(const FinMonoid& m) {
  LawReport report("monoid " + m.name);
  if (!monoid_shape_ok(m, report)) return report;
  const std::size_t n = m.size();
  const auto& el = m.carrier;
  for (std::size_t a = 0; a < n; ++a) {
    report.expect(m.op(m.unit, a) == a, "left unit",
                  [&] { return el[m.unit] + "·" + el[a] + " = " + el[m.op(m.unit, a)]; });
    report.expect(m.op(a, m.unit) == a, "right unit",
                  [&] { return el[a] + "·" + el[m.unit] + " = " + el[m.op(a, m.unit)]; });
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = m.op(a, b);
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t lhs = m.op(ab, c);
        const std::size_t rhs = m.op(a, m.op(b, c));
        report.expect(lhs == rhs, "associativity", [&] {
          return "(" + el[a] + "·" + el[b] + ")·" + el[c] + " = " + el[lhs] + " but " + el[a] +
                 "·(" + el[b] + "·" + el[c] + ") = " + el[rhs];
        });
      }
    }
  }
  return report;
}

LawReport check_comm_monoid(const CommMonoid& m) {
  LawReport report = check_monoid(m);
  if (m.table.size() != m.size() * m.size()) return report;
  const auto& el = m.carrier;
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      report.expect(m.op(a, b) == m.op(b, a), "commutativity", [&] {
        return el[a] + "·" + el[b] + " = " + el[m.op(a, b)] + " but " + el[b] + "·" + el[a] +
               " = " + el[m.op(b, a)];
      });
    }
  }
  return report;
}

LawReport check_rig(const FinRig& r) {
  LawReport report("rig " + r.name);
  LawReport add = check_comm_monoid(r.add);
  LawReport mul = check_monoid(r.mul);
  for (const auto& v : add.violations()) report.fail("addition " + v.law, v.instance);
  for (const auto& v : mul.violations()) report.fail("multiplication " + v.law, v.instance);
  report.count(add.checked() + mul.checked());
  if (r.add.carrier != r.mul.carrier) {
    report.fail("shape", "addition and multiplication have different carriers");
  }
  if (!report.passed()) return report;

  const std::size_t n = r.size();
  const auto& el = r.carrier();
  for (std::size_t a = 0; a < n; ++a) {
    report.expect(r.times(r.zero(), a) == r.zero(), "left annihilation",
                  [&] { return "0·" + el[a] + " = " + el[r.times(r.zero(), a)]; });
    report.expect(r.times(a, r.zero()) == r.zero(), "right annihilation",
                  [&] { return el[a] + "·0 = " + el[r.times(a, r.zero())]; });
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t l1 = r.times(a, r.plus(b, c));
        const std::size_t r1 = r.plus(r.times(a, b), r.times(a, c));
        report.expect(l1 == r1, "left distributivity", [&] {
          return el[a] + "·(" + el[b] + "+" + el[c] + ") = " + el[l1] + " but " + el[a] + "·" +
                 el[b] + "+" + el[a] + "·" + el[c] + " = " + el[r1];
        });
        const std::size_t l2 = r.times(r.plus(b, c), a);
        const std::size_t r2 = r.plus(r.times(b, a), r.times(c, a));
        report.expect(l2 == r2, "right distributivity", [&] {
          return "(" + el[b] + "+" + el[c] + ")·" + el[a] + " = " + el[l2] + " but " + el[b] + "·" +
                 el[a] + "+" + el[c] + "·" + el[a] + " = " + el[r2];
        });
      }
    }
  }
  return report;
}

ArrowId PreadditiveFinCat::add(ArrowId f, ArrowId g) const {
  const auto& a = base->arrow(f);
  const auto& b = base->arrow(g);
  if (a.dom != b.dom || a.cod != b.cod) {
    throw ObjectMismatch("cannot add non-parallel arrows " + a.name + " and " + b.name);
  }
  return static_cast<ArrowId>(sum.at(f * base->arrow_count() + g));
}

LawReport check_preadditive(const PreadditiveFinCat& c) {
  const FinCategory& cat = *c.base;
  LawReport report("preadditive " + cat.name());
  report.merge(check_category(cat));
  const std::size_t n = cat.arrow_count();
  const std::size_t k = cat.object_count();
  if (c.sum.size() != n * n || c.zero.size() != k * k) {
    report.fail("shape", "sum or zero table has the wrong size");
    return report;
  }
  auto nm = [&](ArrowId a) { return cat.arrow(a).name; };
  auto parallel = [&](ArrowId f, ArrowId g) {
    return cat.dom(f) == cat.dom(g) && cat.cod(f) == cat.cod(g);
  };

  bool typed = true;
  for (ObjIndex x = 0; x < k; ++x) {
    for (ObjIndex y = 0; y < k; ++y) {
      const ArrowId z = c.zero[x * k + y];
      typed &= report.expect(z < n && cat.dom(z) == x && cat.cod(z) == y, "zero typing", [&] {
        return "zero " + cat.objects()[x] + " → " + cat.objects()[y] + " is not in that hom-set";
      });
    }
  }
  for (ArrowId f = 0; f < n; ++f) {
    for (ArrowId g = 0; g < n; ++g) {
      if (!parallel(f, g)) continue;
      const auto s = c.sum[f * n + g];
      typed &= report.expect(s >= 0 && static_cast<std::size_t>(s) < n &&
                                 parallel(f, static_cast<ArrowId>(s)),
                             "sum typing", [&] { return nm(f) + "+" + nm(g) + " is not parallel"; });
    }
  }
  if (!typed || !report.passed()) return report;

  // Each hom-set is a commutative monoid under + with unit its zero.
  for (ArrowId f = 0; f < n; ++f) {
    const ArrowId z = c.zero_arrow(cat.dom(f), cat.cod(f));
    report.expect(c.add(z, f) == f && c.add(f, z) == f, "additive unit",
                  [&] { return "0+" + nm(f) + " = " + nm(c.add(z, f)); });
    for (ArrowId g : cat.hom(cat.dom(f), cat.cod(f))) {
      report.expect(c.add(f, g) == c.add(g, f), "additive commutativity", [&] {
        return nm(f) + "+" + nm(g) + " = " + nm(c.add(f, g)) + " but " + nm(g) + "+" + nm(f) +
               " = " + nm(c.add(g, f));
      });
      for (ArrowId h : cat.hom(cat.dom(f), cat.cod(f))) {
        const ArrowId lhs = c.add(c.add(f, g), h);
        const ArrowId rhs = c.add(f, c.add(g, h));
        report.expect(lhs == rhs, "additive associativity", [&] {
          return "(" + nm(f) + "+" + nm(g) + ")+" + nm(h) + " = " + nm(lhs) + " but " + nm(f) +
                 "+(" + nm(g) + "+" + nm(h) + ") = " + nm(rhs);
        });
      }
    }
  }

  // Bi-additivity of composition.
  for (ArrowId f = 0; f < n; ++f) {
    const ObjIndex x = cat.dom(f);
    const ObjIndex y = cat.cod(f);
    for (ArrowId g : cat.hom(x, y)) {
      const ArrowId fg = c.add(f, g);
      for (ObjIndex w = 0; w < k; ++w) {
        for (ArrowId h : cat.hom(y, w)) {
          const ArrowId lhs = cat.compose(h, fg);
          const ArrowId rhs = c.add(cat.compose(h, f), cat.compose(h, g));
          report.expect(lhs == rhs, "left bi-additivity", [&] {
            return nm(h) + "∘(" + nm(f) + "+" + nm(g) + ") = " + nm(lhs) + " but " + nm(h) + "∘" +
                   nm(f) + "+" + nm(h) + "∘" + nm(g) + " = " + nm(rhs);
          });
        }
        for (ArrowId h : cat.hom(w, x)) {
          const ArrowId lhs = cat.compose(fg, h);
          const ArrowId rhs = c.add(cat.compose(f, h), cat.compose(g, h));
          report.expect(lhs == rhs, "right bi-additivity", [&] {
            return "(" + nm(f) + "+" + nm(g) + ")∘" + nm(h) + " = " + nm(lhs) + " but " + nm(f) +
                   "∘" + nm(h) + "+" + nm(g) + "∘" + nm(h) + " = " + nm(rhs);
          });
        }
      }
    }
  }
  for (ArrowId f = 0; f < n; ++f) {
    const ObjIndex x = cat.dom(f);
    const ObjIndex y = cat.cod(f);
    for (ObjIndex w = 0; w < k; ++w) {
      const ArrowId after = cat.compose(f, c.zero_arrow(w, x));
      report.expect(after == c.zero_arrow(w, y), "zero absorption",
                    [&] { return nm(f) + "∘0 = " + nm(after) + ", expected 0"; });
      const ArrowId before = cat.compose(c.zero_arrow(y, w), f);
      report.expect(before == c.zero_arrow(x, w), "zero absorption",
                    [&] { return "0∘" + nm(f) + " = " + nm(before) + ", expected 0"; });
    }
  }
  return report;
}

std::shared_ptr<const FinCategory> rig_category(const FinRig& r) {
  return std::make_shared<const FinCategory>(monoid_category_of(
      FinMonoid{r.name, r.mul.carrier, r.mul.table, r.mul.unit}));
}

PreadditiveFinCat rig_to_preadditive(const FinRig& r) {
  PreadditiveFinCat c;
  c.base = rig_category(r);
  c.sum.assign(r.add.table.begin(), r.add.table.end());
  c.zero = {r.zero()};
  return c;
}

FinRig preadditive_to_rig(const PreadditiveFinCat& c) {
  const FinCategory& cat = *c.base;
  if (cat.object_count() != 1) {
    throw SchemaError("", "preadditive category " + cat.name() + " has more than one object");
  }
  const std::size_t n = cat.arrow_count();
  std::vector<std::string> carrier;
  for (const auto& a : cat.arrows()) carrier.push_back(a.name);
  FinRig r;
  r.name = cat.name();
  r.add = CommMonoid{cat.name() + "/+", carrier, {}, c.zero.at(0)};
  r.mul = FinMonoid{cat.name() + "/·", carrier, {}, cat.identity(0)};
  for (std::size_t i = 0; i < n * n; ++i) {
    r.add.table.push_back(static_cast<std::size_t>(c.sum.at(i)));
    r.mul.table.push_back(static_cast<std::size_t>(cat.composition_table()[i]));
  }
  return r;
}

void validate_finset(const FinSetObj& s) {
  std::set<std::string> seen;
  for (const auto& e : s.elements) {
    if (!seen.insert(e).second) {
      throw SchemaError("", "set " + s.name + " repeats element " + e);
    }
  }
}

FinCategory terminal_category() {
  return FinCategory("1", {"*"}, {{"id", 0, 0}}, {0}, {0});
}

FinCategory monoid_category_of(const FinMonoid& m) {
  std::vector<FinCategory::Arrow> arrows;
  for (const auto& e : m.carrier) arrows.push_back({e, 0, 0});
  std::vector<std::int64_t> comp(m.table.begin(), m.table.end());
  return FinCategory(m.name, {"*"}, std::move(arrows), {m.unit}, std::move(comp));
}

FinCategory two_object_category() {
  // 0 id_X, 1 id_Y, 2 s, 3 f, 4 g
  std::vector<FinCategory::Arrow> arrows = {
      {"id_X", 0, 0}, {"id_Y", 1, 1}, {"s", 1, 1}, {"f", 0, 1}, {"g", 0, 1}};
  std::vector<ArrowId> ids = {0, 1};
  auto comp = build_composition(arrows, ids, {{2, 2, 1}, {2, 3, 4}, {2, 4, 3}});
  return FinCategory("two_obj_cat", {"X", "Y"}, std::move(arrows), std::move(ids),
                     std::move(comp));
}

FinCategory walking_composable_pair() {
  // 0 id0, 1 id1, 2 id2, 3 f, 4 g, 5 gf
  std::vector<FinCategory::Arrow> arrows = {{"id0", 0, 0}, {"id1", 1, 1}, {"id2", 2, 2},
                                            {"f", 0, 1},   {"g", 1, 2},   {"gf", 0, 2}};
  std::vector<ArrowId> ids = {0, 1, 2};
  auto comp = build_composition(arrows, ids, {{4, 3, 5}});
  return FinCategory("composable_pair", {"0", "1", "2"}, std::move(arrows), std::move(ids),
                     std::move(comp));
}

FinCategory product_category(const FinCategory& c, const FinCategory& d) {
  const std::size_t nd = d.arrow_count();
  const std::size_t kd = d.object_count();
  std::vector<std::string> objects;
  for (const auto& x : c.objects()) {
    for (const auto& y : d.objects()) objects.push_back("(" + x + "," + y + ")");
  }
  std::vector<FinCategory::Arrow> arrows;
  for (const auto& a : c.arrows()) {
    for (const auto& b : d.arrows()) {
      arrows.push_back({"(" + a.name + "," + b.name + ")", a.dom * kd + b.dom, a.cod * kd + b.cod});
    }
  }
  std::vector<ArrowId> ids;
  for (ObjIndex x = 0; x < c.object_count(); ++x) {
    for (ObjIndex y = 0; y < kd; ++y) ids.push_back(c.identity(x) * nd + d.identity(y));
  }
  const std::size_t n = arrows.size();
  std::vector<std::int64_t> comp(n * n, FinCategory::kUndefined);
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId f = 0; f < n; ++f) {
      if (arrows[f].cod != arrows[g].dom) continue;
      const ArrowId g1 = g / nd, g2 = g % nd, f1 = f / nd, f2 = f % nd;
      comp[g * n + f] = static_cast<std::int64_t>(c.compose(g1, f1) * nd + d.compose(g2, f2));
    }
  }
  return FinCategory(c.name() + "×" + d.name(), std::move(objects), std::move(arrows),
                     std::move(ids), std::move(comp));
}

FinMonoid cyclic_group(std::size_t n) {
  FinMonoid m{"Z/" + std::to_string(n), {}, {}, 0};
  for (std::size_t a = 0; a < n; ++a) m.carrier.push_back(std::to_string(a));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m.table.push_back((a + b) % n);
  }
  return m;
}

FinRig boolean_rig() {
  const std::vector<std::string> carrier = {"0", "1"};
  return FinRig{"B", CommMonoid{"B/or", carrier, {0, 1, 1, 1}, 0},
                FinMonoid{"B/and", carrier, {0, 0, 0, 1}, 1}};
}

FinRig truncated_tropical_rig(std::size_t k) {
  std::vector<std::string> carrier;
  for (std::size_t a = 0; a <= k; ++a) carrier.push_back(std::to_string(a));
  FinRig r{"T" + std::to_string(k), CommMonoid{"min", carrier, {}, k},
           FinMonoid{"sat+", carrier, {}, 0}};
  for (std::size_t a = 0; a <= k; ++a) {
    for (std::size_t b = 0; b <= k; ++b) {
      r.add.table.push_back(std::min(a, b));
      r.mul.table.push_back(std::min(a + b, k));
    }
  }
  return r;
}

FinRig z2_ring() {
  const std::vector<std::string> carrier = {"0", "1"};
  return FinRig{"Z/2", CommMonoid{"xor", carrier, {0, 1, 1, 0}, 0},
                FinMonoid{"and", carrier, {0, 0, 0, 1}, 1}};
}

namespace {

struct BoolMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint32_t bits = 0;  // entry (i, j) at bit i * cols + j

  bool at(std::size_t i, std::size_t j) const { return (bits >> (i * cols + j)) & 1U; }

  std::string name() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows; ++i) {
      if (i > 0) s += ';';
      for (std::size_t j = 0; j < cols; ++j) s += at(i, j) ? '1' : '0';
    }
    return s + "]";
  }
};

}  // namespace

PreadditiveFinCat boolean_matrix_category() {
  // Objects "1", "2" (index 0 ↦ size 1, index 1 ↦ size 2).
  const std::size_t sizes[2] = {1, 2};
  std::vector<BoolMatrix> mats;
  std::vector<FinCategory::Arrow> arrows;
  std::vector<ArrowId> ids(2);
  for (ObjIndex m = 0; m < 2; ++m) {
    for (ObjIndex n = 0; n < 2; ++n) {
      const std::size_t rows = sizes[n], cols = sizes[m];
      for (std::uint32_t bits = 0; bits < (1U << (rows * cols)); ++bits) {
        BoolMatrix mat{rows, cols, bits};
        if (m == n) {
          bool is_id = true;
          for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) is_id &= mat.at(i, j) == (i == j);
          }
          if (is_id) ids[m] = arrows.size();
        }
        mats.push_back(mat);
        arrows.push_back({mat.name(), m, n});
      }
    }
  }
  const std::size_t n = arrows.size();
  auto find = [&](const BoolMatrix& mat, ObjIndex dom, ObjIndex cod) {
    for (ArrowId a = 0; a < n; ++a) {
      if (arrows[a].dom == dom && arrows[a].cod == cod && mats[a].bits == mat.bits) return a;
    }
    throw SchemaError("", "matrix not found");
  };
  std::vector<std::int64_t> comp(n * n, FinCategory::kUndefined);
  std::vector<std::int64_t> sum(n * n, FinCategory::kUndefined);
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId f = 0; f < n; ++f) {
      if (arrows[f].cod == arrows[g].dom) {
        // (g∘f)(i, j) = OR_k g(i, k) AND f(k, j)
        BoolMatrix prod{mats[g].rows, mats[f].cols, 0};
        for (std::size_t i = 0; i < prod.rows; ++i) {
          for (std::size_t j = 0; j < prod.cols; ++j) {
            bool v = false;
            for (std::size_t k = 0; k < mats[g].cols; ++k) v |= mats[g].at(i, k) && mats[f].at(k, j);
            if (v) prod.bits |= 1U << (i * prod.cols + j);
          }
        }
        comp[g * n + f] = static_cast<std::int64_t>(find(prod, arrows[f].dom, arrows[g].cod));
      }
      if (arrows[f].dom == arrows[g].dom && arrows[f].cod == arrows[g].cod) {
        sum[g * n + f] = static_cast<std::int64_t>(
            find(BoolMatrix{mats[f].rows, mats[f].cols, mats[f].bits | mats[g].bits},
                 arrows[f].dom, arrows[f].cod));
      }
    }
  }
  PreadditiveFinCat c;
  c.base = std::make_shared<const FinCategory>("Mat(B)", std::vector<std::string>{"1", "2"},
                                               arrows, ids, std::move(comp));
  c.sum = std::move(sum);
  for (ObjIndex x = 0; x < 2; ++x) {
    for (ObjIndex y = 0; y < 2; ++y) c.zero.push_back(find(BoolMatrix{sizes[y], sizes[x], 0}, x, y));
  }
  return c;
}

}  // namespace multikat
