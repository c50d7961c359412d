#include "multikat/cartesian.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "multikat/errors.hpp"

namespace multikat {

// ---------------------------------------------------------------------------
// Index maps

bool IndexMap::is_bijection() const {
  if (src.size() != tgt.size()) return false;
  std::vector<bool> hit(tgt.size(), false);
  for (auto j : map) {
    if (j >= tgt.size() || hit[j]) return false;
    hit[j] = true;
  }
  return true;
}

void validate(const IndexMap& p) {
  if (p.map.size() != p.src.size()) throw ObjectMismatch("index map: length differs from source");
  for (std::size_t i = 0; i < p.map.size(); ++i) {
    if (p.map[i] >= p.tgt.size()) {
      throw ObjectMismatch("index map: " + std::to_string(i + 1) + " goes out of range");
    }
    if (p.tgt[p.map[i]] != p.src[i]) {
      throw ObjectMismatch("index map: " + std::to_string(i + 1) + "↦" +
                           std::to_string(p.map[i] + 1) + " is not over the objects");
    }
  }
}

std::string describe(const IndexMap& p) {
  std::string s;
  for (std::size_t i = 0; i < p.map.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(i + 1) + "↦" + std::to_string(p.map[i] + 1);
  }
  return std::to_string(p.src.size()) + "→" + std::to_string(p.tgt.size()) +
         (s.empty() ? "" : " " + s);
}

IndexMap identity_index_map(const ObjList& objs) {
  IndexMap p{objs, objs, std::vector<std::size_t>(objs.size())};
  std::iota(p.map.begin(), p.map.end(), 0);
  return p;
}

IndexMap compose_index_maps(const IndexMap& q, const IndexMap& p) {
  if (p.tgt != q.src) throw ObjectMismatch("index maps are not composable");
  IndexMap r{p.src, q.tgt, {}};
  r.map.reserve(p.map.size());
  for (auto j : p.map) r.map.push_back(q.map.at(j));
  return r;
}

IndexMap block_sum(std::span<const IndexMap> ps) {
  IndexMap r;
  for (const auto& p : ps) {
    const std::size_t shift = r.tgt.size();
    r.src.insert(r.src.end(), p.src.begin(), p.src.end());
    for (auto j : p.map) r.map.push_back(j + shift);
    r.tgt.insert(r.tgt.end(), p.tgt.begin(), p.tgt.end());
  }
  return r;
}

IndexMap derived_map(const IndexMap& p, const std::vector<ObjList>& arg_doms) {
  if (arg_doms.size() != p.tgt.size()) {
    throw ArityMismatch("derived_map: need one domain per target slot");
  }
  std::vector<std::size_t> offset(arg_doms.size() + 1, 0);
  IndexMap r;
  for (std::size_t j = 0; j < arg_doms.size(); ++j) {
    offset[j + 1] = offset[j] + arg_doms[j].size();
    r.tgt.insert(r.tgt.end(), arg_doms[j].begin(), arg_doms[j].end());
  }
  for (auto j : p.map) {
    const auto& block = arg_doms.at(j);
    r.src.insert(r.src.end(), block.begin(), block.end());
    for (std::size_t k = 0; k < block.size(); ++k) r.map.push_back(offset[j] + k);
  }
  return r;
}

IndexMap contraction(ObjId x, std::size_t n) {
  return IndexMap{ObjList(n, x), ObjList{x}, std::vector<std::size_t>(n, 0)};
}

IndexMap weakening(ObjId x, ObjId y, std::size_t which) {
  if (which > 1) throw ArityMismatch("weakening: which must be 0 or 1");
  return IndexMap{ObjList{which == 0 ? x : y}, ObjList{x, y}, {which}};
}

IndexMap exchange(ObjId x, ObjId y) { return IndexMap{ObjList{x, y}, ObjList{y, x}, {1, 0}}; }

std::vector<IndexMap> index_maps_from(const ObjList& src, std::span<const ObjId> objects,
                                      std::size_t max_len, bool bijections_only) {
  std::vector<IndexMap> out;
  const std::size_t n = src.size();
  for (std::size_t m = 0; m <= max_len; ++m) {
    if (bijections_only && m != n) continue;
    if (n > 0 && m == 0) continue;
    std::vector<std::size_t> map(n, 0);
    while (true) {
      // Targets forced by the map; conflicting requirements are skipped.
      std::vector<std::optional<ObjId>> forced(m);
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        auto& slot = forced[map[i]];
        if (slot && *slot != src[i]) ok = false;
        slot = src[i];
      }
      if (ok && bijections_only) ok = IndexMap{src, ObjList(m), map}.is_bijection();
      if (ok) {
        std::vector<std::size_t> free;
        for (std::size_t j = 0; j < m; ++j) {
          if (!forced[j]) free.push_back(j);
        }
        ObjList tgt(m);
        for (std::size_t j = 0; j < m; ++j) {
          if (forced[j]) tgt[j] = *forced[j];
        }
        std::vector<std::size_t> pick(free.size(), 0);
        if (free.empty() || !objects.empty()) {
          while (true) {
            for (std::size_t k = 0; k < free.size(); ++k) tgt[free[k]] = objects[pick[k]];
            out.push_back(IndexMap{src, tgt, map});
            std::size_t k = free.size();
            while (k > 0 && ++pick[k - 1] == objects.size()) pick[--k] = 0;
            if (k == 0) break;
          }
        }
      }
      std::size_t i = n;
      while (i > 0 && ++map[i - 1] == m) map[--i] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cartesian multicategories

MultiArrow CartesianMulticategory::act(const IndexMap& p, const MultiArrow& f) const {
  validate(p);
  if (p.src != f.dom) {
    throw ObjectMismatch(name + ": index map source " + multicat->describe_list(p.src) +
                         " is not the domain of " + multicat->describe(f));
  }
  return act_fn(p, f);
}

namespace {

std::string args_text(const Multicategory& m, const std::vector<MultiArrow>& args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) s += ", ";
    s += m.describe_label(args[i]);
  }
  return s + ")";
}

class MapCache {
 public:
  MapCache(std::vector<ObjId> objects, std::size_t max_len, bool bijections)
      : objects_(std::move(objects)), max_len_(max_len), bijections_(bijections) {}

  const std::vector<IndexMap>& from(const ObjList& src) {
    auto it = cache_.find(src);
    if (it == cache_.end()) {
      it = cache_.emplace(src, index_maps_from(src, objects_, max_len_, bijections_)).first;
    }
    return it->second;
  }

 private:
  std::vector<ObjId> objects_;
  std::size_t max_len_;
  bool bijections_;
  std::map<ObjList, std::vector<IndexMap>> cache_;
};

}  // namespace

LawReport check_fp(const CartesianMulticategory& cm, const CheckBounds& bounds,
                   bool bijections_only) {
  const Multicategory& m = *cm.multicat;
  LawReport report(std::string("fp-structure ") + cm.name +
                   (bijections_only ? " (bijections only)" : ""));
  report.set_violation_limit(bounds.violation_limit);
  HomEnumerator en(m, bounds);
  const std::size_t a = bounds.arity_bound;
  MapCache maps(en.objects(), a, bijections_only);

  bool typed = true;
  en.for_each_arrow(a, [&](const MultiArrow& f) {
    const MultiArrow same = cm.act_fn(identity_index_map(f.dom), f);
    report.expect(same == f, "act identity", [&] {
      return "id·" + m.describe(f) + " = " + m.describe(same);
    });
    for (const auto& p : maps.from(f.dom)) {
      const MultiArrow pf = cm.act_fn(p, f);
      typed &= report.expect(pf.dom == p.tgt && pf.cod == f.cod && m.contains(pf), "act typing",
                             [&] {
                               return "(" + describe(p) + ")·" + m.describe(f) + " = " +
                                      m.describe(pf) + " is not in hom(" +
                                      m.describe_list(p.tgt) + "; " + m.object_name(f.cod) + ")";
                             });
    }
  });
  if (!typed) return report;

  // Functoriality in p.
  en.for_each_arrow(a, [&](const MultiArrow& f) {
    for (const auto& p : maps.from(f.dom)) {
      const MultiArrow pf = cm.act_fn(p, f);
      for (const auto& q : maps.from(p.tgt)) {
        const MultiArrow lhs = cm.act_fn(compose_index_maps(q, p), f);
        const MultiArrow rhs = cm.act_fn(q, pf);
        report.expect(lhs == rhs, "act composition", [&] {
          return "(" + describe(q) + " ∘ " + describe(p) + ")·" + m.describe_label(f) + " = " +
                 m.describe_label(lhs) + " but (" + describe(q) + ")·((" + describe(p) + ")·" +
                 m.describe_label(f) + ") = " + m.describe_label(rhs);
        });
      }
    }
  });

  // f(p_1 f_1, …, p_n f_n) = (p_1 + … + p_n) f(f_1, …, f_n)
  en.for_each_arrow(a, [&](const MultiArrow& f) {
    en.for_each_args(f.dom, a, [&](const std::vector<MultiArrow>& gs) {
      const MultiArrow fg = m.compose_raw(f, gs);
      std::vector<IndexMap> ps;
      std::vector<MultiArrow> acted;
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t total) {
        if (i == gs.size()) {
          const MultiArrow lhs = m.compose_raw(f, acted);
          const IndexMap sum = block_sum(ps);
          const MultiArrow rhs = cm.act_fn(sum, fg);
          report.expect(lhs == rhs, "compatibility 1", [&] {
            std::string text = m.describe_label(f) + "(";
            for (std::size_t k = 0; k < gs.size(); ++k) {
              text += (k > 0 ? ", " : "") + std::string("(") + describe(ps[k]) + ")·" +
                      m.describe_label(gs[k]);
            }
            return text + ") = " + m.describe_label(lhs) + " but (" + describe(sum) + ")·" +
                   m.describe_label(fg) + " = " + m.describe_label(rhs);
          });
          return;
        }
        for (const auto& p : maps.from(gs[i].dom)) {
          if (total + p.tgt.size() > a) continue;
          ps.push_back(p);
          acted.push_back(cm.act_fn(p, gs[i]));
          rec(i + 1, total + p.tgt.size());
          ps.pop_back();
          acted.pop_back();
        }
      };
      rec(0, 0);
    });
  });

  // (pf)(f_1, …, f_m) = p′(f(f_p1, …, f_pn))
  en.for_each_arrow(a, [&](const MultiArrow& f) {
    for (const auto& p : maps.from(f.dom)) {
      const MultiArrow pf = cm.act_fn(p, f);
      en.for_each_args(p.tgt, a, [&](const std::vector<MultiArrow>& gs) {
        const MultiArrow lhs = m.compose_raw(pf, gs);
        std::vector<MultiArrow> pulled;
        pulled.reserve(p.map.size());
        for (auto j : p.map) pulled.push_back(gs[j]);
        std::vector<ObjList> doms;
        doms.reserve(gs.size());
        for (const auto& g : gs) doms.push_back(g.dom);
        const IndexMap pp = derived_map(p, doms);
        const MultiArrow rhs = cm.act_fn(pp, m.compose_raw(f, pulled));
        report.expect(lhs == rhs, "compatibility 2", [&] {
          return "((" + describe(p) + ")·" + m.describe_label(f) + ")" + args_text(m, gs) + " = " +
                 m.describe_label(lhs) + " but (" + describe(pp) + ")·" + m.describe_label(f) +
                 args_text(m, pulled) + " = " + m.describe_label(rhs);
        });
      });
    }
  });
  return report;
}

CartesianMulticategory fp_of_preadditive(const PreadditiveFinCat& c,
                                         std::shared_ptr<const CoconeMulticategory> owner) {
  if (!owner) owner = discrete_cocone(c.base);
  auto pre = std::make_shared<const PreadditiveFinCat>(c);
  ActFn act = [pre](const IndexMap& p, const MultiArrow& f) {
    MultiArrow out{p.tgt, f.cod, Label(p.tgt.size(), -1)};
    for (std::size_t i = 0; i < p.map.size(); ++i) {
      auto& slot = out.label[p.map[i]];
      const auto leg = static_cast<ArrowId>(f.label[i]);
      slot = slot < 0 ? static_cast<std::int64_t>(leg)
                      : static_cast<std::int64_t>(pre->add(static_cast<ArrowId>(slot), leg));
    }
    for (std::size_t j = 0; j < p.tgt.size(); ++j) {
      if (out.label[j] < 0) {
        out.label[j] = static_cast<std::int64_t>(pre->zero_arrow(p.tgt[j].value, f.cod.value));
      }
    }
    return out;
  };
  return CartesianMulticategory{owner->name(), owner, std::move(act)};
}

CartesianMulticategory fp_of_finsets(std::shared_ptr<const SetxMulticategory> s) {
  ActFn act = [s](const IndexMap& p, const MultiArrow& f) {
    std::vector<std::size_t> pulled(p.map.size());
    return s->tabulate(p.tgt, f.cod, [&](std::span<const std::size_t> y) {
      for (std::size_t i = 0; i < p.map.size(); ++i) pulled[i] = y[p.map[i]];
      return s->apply(f, pulled);
    });
  };
  return CartesianMulticategory{s->name(), s, std::move(act)};
}

LawReport check_fp_functor(const FpFunctor& fp, const CheckBounds& bounds) {
  const MultiFunctor& f = fp.functor;
  const Multicategory& s = *f.source;
  const Multicategory& t = *f.target;
  LawReport report("fp-functor " + (f.name.empty() ? s.name() + " → " + t.name() : f.name));
  report.set_violation_limit(bounds.violation_limit);
  report.merge(check_functor(f, bounds));
  if (!report.passed()) return report;
  HomEnumerator en(s, bounds);
  MapCache maps(en.objects(), bounds.arity_bound, false);
  en.for_each_arrow(bounds.arity_bound, [&](const MultiArrow& g) {
    const MultiArrow fg = f.on_arrows(g);
    for (const auto& p : maps.from(g.dom)) {
      const MultiArrow lhs = f.on_arrows(fp.source.act_fn(p, g));
      const IndexMap fp_map{f.map_objects(p.src), f.map_objects(p.tgt), p.map};
      const MultiArrow rhs = fp.target.act_fn(fp_map, fg);
      report.expect(lhs == rhs, "preserves action", [&] {
        return "F((" + describe(p) + ")·" + s.describe_label(g) + ") = " + t.describe_label(lhs) +
               " but (" + describe(p) + ")·F" + s.describe_label(g) + " = " + t.describe_label(rhs);
      });
    }
  });
  return report;
}

// ---------------------------------------------------------------------------
// cMon

CmonCategory cmon_category(const CartesianMulticategory& cm, std::size_t cap) {
  const Multicategory& m = *cm.multicat;
  auto commutative = [&cm](const MonoidObject& mon) {
    return cm.act_fn(exchange(mon.carrier, mon.carrier), mon.mult) == mon.mult;
  };
  CmonCategory out;
  out.monoids = monoid_category(cm.multicat, cap, commutative);
  const auto& mon = out.monoids;
  const FinCategory& cat = *mon.category;
  const std::size_t n = cat.arrow_count();
  const std::size_t k = cat.object_count();
  out.category.base = mon.category;
  out.category.sum.assign(n * n, FinCategory::kUndefined);
  for (ArrowId f = 0; f < n; ++f) {
    for (ArrowId g = 0; g < n; ++g) {
      const auto& af = cat.arrow(f);
      const auto& ag = cat.arrow(g);
      if (af.dom != ag.dom || af.cod != ag.cod) continue;
      const MonoidObject& y = mon.objects[af.cod];
      const ObjId x = mon.objects[af.dom].carrier;
      const MultiArrow both =
          m.compose_raw(y.mult, std::vector<MultiArrow>{mon.morphisms[f], mon.morphisms[g]});
      const MultiArrow sum = cm.act_fn(contraction(x, 2), both);
      auto idx = mon.find_morphism(af.dom, af.cod, sum);
      if (!idx) {
        throw FpLawFailure(cm.name + ": " + af.name + " + " + ag.name +
                           " is not a monoid morphism");
      }
      out.category.sum[f * n + g] = static_cast<std::int64_t>(*idx);
    }
  }
  for (ObjIndex a = 0; a < k; ++a) {
    for (ObjIndex b = 0; b < k; ++b) {
      const MultiArrow zero = cm.act_fn(contraction(mon.objects[a].carrier, 0), mon.objects[b].unit);
      auto idx = mon.find_morphism(a, b, zero);
      if (!idx) throw FpLawFailure(cm.name + ": zero arrow is not a monoid morphism");
      out.category.zero.push_back(*idx);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Modules

LawReport check_module(const RigModule& m) {
  const FinRig& r = m.rig;
  LawReport report("module " + m.carrier.name + " over " + r.name);
  report.merge(check_comm_monoid(m.carrier));
  const std::size_t n = m.size();
  const std::size_t k = r.size();
  if (m.scalar.size() != n * k ||
      std::any_of(m.scalar.begin(), m.scalar.end(), [n](std::size_t v) { return v >= n; })) {
    report.fail("shape", "scalar table must have |R|·|X| entries in X");
    return report;
  }
  if (!report.passed()) return report;
  const auto& xs = m.carrier.carrier;
  const auto& rs = r.carrier();
  const std::size_t zero = m.carrier.unit;
  auto plus = [&](std::size_t x, std::size_t y) { return m.carrier.op(x, y); };
  for (std::size_t x = 0; x < n; ++x) {
    report.expect(m.act(r.one(), x) == x, "unit scalar", [&] { return "1̄" + xs[x] + " ≠ " + xs[x]; });
    report.expect(m.act(r.zero(), x) == zero, "zero scalar",
                  [&] { return "0̄" + xs[x] + " ≠ " + xs[zero]; });
  }
  for (std::size_t a = 0; a < k; ++a) {
    report.expect(m.act(a, zero) == zero, "scalar of zero",
                  [&] { return rs[a] + "̄0 ≠ 0"; });
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t b = 0; b < k; ++b) {
        report.expect(m.act(r.times(a, b), x) == m.act(a, m.act(b, x)), "scalar product", [&] {
          return "(" + rs[a] + "·" + rs[b] + ")̄" + xs[x] + " ≠ " + rs[a] + "̄(" + rs[b] + "̄" +
                 xs[x] + ")";
        });
        report.expect(m.act(r.plus(a, b), x) == plus(m.act(a, x), m.act(b, x)), "scalar sum", [&] {
          return "(" + rs[a] + "+" + rs[b] + ")̄" + xs[x] + " ≠ " + rs[a] + "̄" + xs[x] + " + " +
                 rs[b] + "̄" + xs[x];
        });
      }
      for (std::size_t y = 0; y < n; ++y) {
        report.expect(m.act(a, plus(x, y)) == plus(m.act(a, x), m.act(a, y)), "additivity", [&] {
          return rs[a] + "̄(" + xs[x] + "+" + xs[y] + ") ≠ " + rs[a] + "̄" + xs[x] + " + " + rs[a] +
                 "̄" + xs[y];
        });
      }
    }
  }
  return report;
}

RigModule regular_module(const FinRig& r) {
  RigModule m{r, r.add, r.mul.table};
  m.carrier.name = r.name;
  return m;
}

RigModule power_module(const FinRig& r, std::size_t k) {
  const std::size_t n = r.size();
  std::size_t size = 1;
  for (std::size_t i = 0; i < k; ++i) size *= n;
  // digits[x] lists the coordinates of x, first coordinate most significant
  std::vector<std::vector<std::size_t>> digits(size, std::vector<std::size_t>(k));
  for (std::size_t x = 0; x < size; ++x) {
    std::size_t rest = x;
    for (std::size_t i = k; i > 0; --i) {
      digits[x][i - 1] = rest % n;
      rest /= n;
    }
  }
  auto encode = [&](const std::vector<std::size_t>& d) {
    std::size_t x = 0;
    for (auto v : d) x = x * n + v;
    return x;
  };
  RigModule m{r, CommMonoid{r.name + "^" + std::to_string(k), {}, {}, 0}, {}};
  for (std::size_t x = 0; x < size; ++x) {
    std::string name = "(";
    for (std::size_t i = 0; i < k; ++i) name += (i > 0 ? "," : "") + r.carrier()[digits[x][i]];
    m.carrier.carrier.push_back(name + ")");
  }
  m.carrier.unit = encode(std::vector<std::size_t>(k, r.zero()));
  std::vector<std::size_t> d(k);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      for (std::size_t i = 0; i < k; ++i) d[i] = r.plus(digits[x][i], digits[y][i]);
      m.carrier.table.push_back(encode(d));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t i = 0; i < k; ++i) d[i] = r.times(a, digits[x][i]);
      m.scalar.push_back(encode(d));
    }
  }
  return m;
}

CartesianMulticategory rig_operad(const FinRig& r) {
  return fp_of_preadditive(rig_to_preadditive(r));
}

namespace {

std::shared_ptr<const SetxMulticategory> as_setx(const MulticategoryPtr& m) {
  auto s = std::dynamic_pointer_cast<const SetxMulticategory>(m);
  if (!s) throw SchemaError("", "expected a functor into Set×");
  return s;
}

std::shared_ptr<const CoconeMulticategory> as_rig_operad(const MulticategoryPtr& m) {
  auto c = std::dynamic_pointer_cast<const CoconeMulticategory>(m);
  if (!c || c->object_count() != 1) throw SchemaError("", "expected a functor out of R_▶");
  return c;
}

}  // namespace

RigModule transpose_module(const FpFunctor& fp) {
  const MultiFunctor& f = fp.functor;
  auto cone = as_rig_operad(f.source);
  auto s = as_setx(f.target);
  const FinCategory& base = cone->base();
  const ObjId x = f.on_objects(ObjId{0});
  const FinSetObj& set = s->set(x);
  const std::size_t n = set.size();

  // Recover the rig from the source fp-structure: + from ν_2, 0 from ν_0.
  FinRig r;
  r.name = base.name();
  std::vector<std::string> carrier;
  for (const auto& a : base.arrows()) carrier.push_back(a.name);
  const std::size_t k = carrier.size();
  r.mul = FinMonoid{base.name() + "/·", carrier, {}, base.identity(0)};
  r.add = CommMonoid{base.name() + "/+", carrier, {}, 0};
  for (std::size_t i = 0; i < k * k; ++i) {
    r.mul.table.push_back(static_cast<std::size_t>(base.composition_table()[i]));
  }
  for (ArrowId a = 0; a < k; ++a) {
    for (ArrowId b = 0; b < k; ++b) {
      const auto sum = fp.source.act_fn(contraction(ObjId{0}, 2), cone->arrow({a, b}, 0));
      r.add.table.push_back(static_cast<std::size_t>(sum.label[0]));
    }
  }
  r.add.unit = static_cast<std::size_t>(
      fp.source.act_fn(contraction(ObjId{0}, 0), cone->arrow({}, 0)).label[0]);

  RigModule m;
  m.rig = r;
  m.carrier = CommMonoid{set.name, set.elements, {}, 0};
  const ArrowId one = base.identity(0);
  const MultiArrow plus = f.on_arrows(cone->arrow({one, one}, 0));
  const MultiArrow zero = f.on_arrows(cone->arrow({}, 0));
  if (plus.label.size() != n * n || zero.label.size() != 1) {
    throw ModuleLawFailure("transpose: generator images are mistyped");
  }
  for (auto v : plus.label) m.carrier.table.push_back(static_cast<std::size_t>(v));
  m.carrier.unit = static_cast<std::size_t>(zero.label[0]);
  for (ArrowId a = 0; a < k; ++a) {
    const MultiArrow alpha = f.on_arrows(cone->arrow({a}, 0));
    if (alpha.label.size() != n) throw ModuleLawFailure("transpose: scalar image is mistyped");
    for (auto v : alpha.label) m.scalar.push_back(static_cast<std::size_t>(v));
  }
  const LawReport report = check_module(m);
  if (!report.passed()) {
    throw ModuleLawFailure("transpose of " + f.name + ": [" + report.violations()[0].law + "] " +
                           report.violations()[0].instance);
  }
  return m;
}

FpFunctor generators_to_fp(const RigModule& m, const CartesianMulticategory* source) {
  LawReport report = check_monoid(m.carrier);
  const std::size_t n = m.size();
  const FinRig& r = m.rig;
  if (report.passed() && m.scalar.size() != r.size() * n) {
    report.fail("shape", "scalar table needs " + std::to_string(r.size() * n) + " entries");
  }
  if (report.passed()) {
    const auto& el = m.carrier.carrier;
    const auto& rc = r.carrier();
    for (std::size_t x = 0; x < n; ++x) {
      report.expect(m.act(r.one(), x) == x, "scalar identity", [&] {
        return rc[r.one()] + "·" + el[x] + " = " + el[m.act(r.one(), x)];
      });
      for (std::size_t a = 0; a < r.size(); ++a) {
        for (std::size_t b = 0; b < r.size(); ++b) {
          const auto lhs = m.act(r.times(a, b), x);
          const auto rhs = m.act(a, m.act(b, x));
          report.expect(lhs == rhs, "scalar composition", [&] {
            return "(" + rc[a] + "·" + rc[b] + ")·" + el[x] + " = " + el[lhs] + " but " + rc[a] + "·(" +
                   rc[b] + "·" + el[x] + ") = " + el[rhs];
          });
        }
      }
    }
    for (std::size_t a = 0; a < r.size(); ++a) {
      report.expect(m.act(a, m.carrier.unit) == m.carrier.unit, "scalar unit", [&] {
        return rc[a] + "·" + el[m.carrier.unit] + " = " + el[m.act(a, m.carrier.unit)];
      });
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          const auto lhs = m.act(a, m.carrier.op(x, y));
          const auto rhs = m.carrier.op(m.act(a, x), m.act(a, y));
          report.expect(lhs == rhs, "scalar product", [&] {
            return rc[a] + "·(" + el[x] + "·" + el[y] + ") = " + el[lhs] + " but " + el[rhs];
          });
        }
      }
    }
  }
  if (!report.passed()) {
    throw MonoidLawFailure("not a functor into Mon(Set×): [" + report.violations()[0].law + "] " +
                           report.violations()[0].instance);
  }
  FpFunctor out{{}, source ? *source : rig_operad(m.rig), {}};
  auto s = rep_of_finsets({FinSetObj{m.carrier.name.empty() ? "X" : m.carrier.name,
                                     m.carrier.carrier}});
  out.target = fp_of_finsets(s);
  auto mod = std::make_shared<const RigModule>(m);
  out.functor = MultiFunctor{
      "module " + m.carrier.name, out.source.multicat, s, [](ObjId) { return ObjId{0}; },
      [s, mod](const MultiArrow& f) {
        const ObjList dom(f.arity(), ObjId{0});
        return s->tabulate(dom, ObjId{0}, [&](std::span<const std::size_t> xs) {
          std::size_t acc = mod->carrier.unit;
          for (std::size_t i = 0; i < xs.size(); ++i) {
            acc = mod->carrier.op(acc, mod->act(static_cast<std::size_t>(f.label[i]), xs[i]));
          }
          return acc;
        });
      }};
  return out;
}

FpFunctor module_to_fp(const RigModule& m, const CartesianMulticategory* source) {
  const LawReport report = check_module(m);
  if (!report.passed()) {
    throw ModuleLawFailure(report.violations()[0].law + ": " + report.violations()[0].instance);
  }
  return generators_to_fp(m, source);
}

std::vector<FinMonoid> enumerate_monoids(std::size_t n, bool commutative_only) {
  std::vector<FinMonoid> out;
  if (n == 0) return out;
  std::vector<std::string> carrier;
  for (std::size_t i = 0; i < n; ++i) carrier.push_back(std::to_string(i));
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<std::size_t> table(n * n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t a = 0; a < n; ++a) {
      table[u * n + a] = a;
      table[a * n + u] = a;
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = commutative_only ? a : 0; b < n; ++b) {
        if (a != u && b != u) free.emplace_back(a, b);
      }
    }
    std::vector<std::size_t> values(free.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < free.size(); ++i) {
        table[free[i].first * n + free[i].second] = values[i];
        if (commutative_only) table[free[i].second * n + free[i].first] = values[i];
      }
      bool assoc = true;
      for (std::size_t a = 0; a < n && assoc; ++a) {
        for (std::size_t b = 0; b < n && assoc; ++b) {
          for (std::size_t c = 0; c < n && assoc; ++c) {
            assoc = table[table[a * n + b] * n + c] == table[a * n + table[b * n + c]];
          }
        }
      }
      if (assoc) out.push_back(FinMonoid{"M" + std::to_string(out.size()), carrier, table, u});
      std::size_t i = free.size();
      while (i > 0 && ++values[i - 1] == n) values[--i] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

namespace {

// All maps h : {0..n-1} → {0..n-1} with h(x·y) = h(x)·h(y) and h(1) = 1.
std::vector<std::vector<std::size_t>> endomorphisms(const FinMonoid& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> h(n, 0);
  while (true) {
    bool ok = h[m.unit] == m.unit;
    for (std::size_t x = 0; x < n && ok; ++x) {
      for (std::size_t y = 0; y < n && ok; ++y) ok = h[m.op(x, y)] == m.op(h[x], h[y]);
    }
    if (ok) out.push_back(h);
    std::size_t i = n;
    while (i > 0 && ++h[i - 1] == n) h[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace

std::vector<RigModule> enumerate_modules(const FinRig& r, std::size_t n) {
  std::vector<RigModule> out;
  const std::size_t k = r.size();
  for (const auto& x : enumerate_monoids(n, true)) {
    // Each scalar ᾱ must at least be an endomorphism of (X, +, 0).
    const auto endos = endomorphisms(x);
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      RigModule m{r, x, {}};
      m.carrier.name = "X";
      for (std::size_t a = 0; a < k; ++a) {
        m.scalar.insert(m.scalar.end(), endos[pick[a]].begin(), endos[pick[a]].end());
      }
      if (check_module(m).passed()) out.push_back(std::move(m));
      std::size_t i = k;
      while (i > 0 && ++pick[i - 1] == endos.size()) pick[--i] = 0;
      if (i == 0) break;
    }
  }
  return out;
}

std::vector<FpFunctor> enumerate_rig_functors(const FinRig& r, std::size_t n,
                                              const CartesianMulticategory* source) {
  std::vector<FpFunctor> out;
  const CartesianMulticategory src = source ? *source : rig_operad(r);
  auto cone = as_rig_operad(src.multicat);
  std::vector<std::string> elements;
  for (std::size_t i = 0; i < n; ++i) elements.push_back(std::to_string(i));
  auto s = rep_of_finsets({FinSetObj{"X", elements}});
  const CartesianMulticategory tgt = fp_of_finsets(s);
  const ObjId x{0};
  for (const auto& mon : enumerate_monoids(n)) {
    // Mon(Set×) restricted to this one monoid and its endomorphisms.
    MonoidCategory inventory;
    inventory.ambient = s;
    MonoidObject obj{x, MultiArrow{{}, x, {static_cast<std::int64_t>(mon.unit)}},
                     MultiArrow{{x, x}, x, Label(mon.table.begin(), mon.table.end())}};
    inventory.objects.push_back(obj);
    std::vector<FinCategory::Arrow> arrows;
    std::map<MultiArrow, ArrowId> index;
    ArrowId id = 0;
    for (const auto& h : endomorphisms(mon)) {
      MultiArrow f{{x}, x, Label(h.begin(), h.end())};
      if (f == s->identity(x)) id = arrows.size();
      index.emplace(f, arrows.size());
      arrows.push_back({s->describe_label(f), 0, 0});
      inventory.morphisms.push_back(std::move(f));
    }
    const std::size_t e = arrows.size();
    std::vector<std::int64_t> comp(e * e);
    for (ArrowId g = 0; g < e; ++g) {
      for (ArrowId f = 0; f < e; ++f) {
        const auto gf = s->compose_raw(inventory.morphisms[g],
                                       std::vector<MultiArrow>{inventory.morphisms[f]});
        comp[g * e + f] = static_cast<std::int64_t>(index.at(gf));
      }
    }
    inventory.category = std::make_shared<const FinCategory>(
        "End(" + mon.name + ")", std::vector<std::string>{"X"}, std::move(arrows),
        std::vector<ArrowId>{id}, std::move(comp));
    for (const auto& g : enumerate_monoid_valued_functors(cone->base_ptr(), inventory)) {
      out.push_back(FpFunctor{transpose_to_mlt(g, cone), src, tgt});
    }
  }
  return out;
}

}  // namespace multikat
