#include "multikat/kernel.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "multikat/errors.hpp"

namespace multikat {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(' || ch == '<' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == '>' || ch == ']' || ch == '}') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

std::optional<ObjId> Multicategory::find_object(std::string_view name) const {
  const std::uint64_t n = object_count();
  if (n > 1'000'000) return std::nullopt;
  for (std::uint64_t i = 0; i < n; ++i) {
    const ObjId x = object_at(i);
    if (object_name(x) == name) return x;
  }
  return std::nullopt;
}

std::vector<MultiArrow> Multicategory::arrows_from(const ObjList& dom, std::size_t cap) const {
  std::vector<MultiArrow> out;
  const std::uint64_t n = object_count();
  if (n > cap) throw EnumerationOverflow(name() + ": too many codomains to enumerate");
  for (std::uint64_t i = 0; i < n; ++i) {
    auto h = hom(dom, object_at(i), cap);
    if (out.size() + h.size() > cap) {
      throw EnumerationOverflow(name() + ": arrows out of " + describe_list(dom) + " exceed cap");
    }
    out.insert(out.end(), std::make_move_iterator(h.begin()), std::make_move_iterator(h.end()));
  }
  return out;
}

MultiArrow Multicategory::compose(const MultiArrow& f, std::span<const MultiArrow> args) const {
  if (!contains(f)) throw ForeignArrow(name() + ": " + describe(f) + " is not an arrow here");
  if (args.size() != f.arity()) {
    throw ArityMismatch(name() + ": " + describe(f) + " expects " + std::to_string(f.arity()) +
                        " arguments, got " + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].cod != f.dom[i]) {
      throw ObjectMismatch(name() + ": argument " + std::to_string(i + 1) + " has codomain " +
                           object_name(args[i].cod) + ", slot expects " + object_name(f.dom[i]));
    }
    if (!contains(args[i])) {
      throw ForeignArrow(name() + ": argument " + std::to_string(i + 1) +
                         " is not an arrow here");
    }
  }
  return do_compose(f, args);
}

MultiArrow Multicategory::compose_at(const MultiArrow& f, std::size_t slot,
                                     const MultiArrow& g) const {
  if (slot >= f.arity()) throw ArityMismatch(name() + ": slot out of range");
  std::vector<MultiArrow> args;
  args.reserve(f.arity());
  for (std::size_t i = 0; i < f.arity(); ++i) args.push_back(i == slot ? g : identity(f.dom[i]));
  return compose(f, args);
}

std::string Multicategory::describe_label(const MultiArrow& f) const {
  std::string s = "[";
  for (std::size_t i = 0; i < f.label.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(f.label[i]);
  }
  return s + "]";
}

std::string Multicategory::describe_list(const ObjList& objs) const {
  std::string s;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (i > 0) s += ",";
    s += object_name(objs[i]);
  }
  return s;
}

std::string Multicategory::describe(const MultiArrow& f) const {
  return describe_list(f.dom) + " -> " + object_name(f.cod) + " : " + describe_label(f);
}

ObjList Multicategory::parse_object_list(std::string_view text) const {
  ObjList out;
  for (const auto& part : split_top_level(text, ',')) {
    auto x = find_object(part);
    if (!x) throw SchemaError("", name() + ": unknown object '" + part + "'");
    out.push_back(*x);
  }
  return out;
}

MultiArrow Multicategory::parse_arrow(std::string_view text, std::size_t cap) const {
  const auto arrow = text.find("->");
  if (arrow == std::string_view::npos) {
    throw SchemaError("", "arrow '" + std::string(text) + "' must look like 'dom -> cod : label'");
  }
  const auto colon = text.find(':', arrow);
  if (colon == std::string_view::npos) {
    throw SchemaError("", "arrow '" + std::string(text) + "' is missing ': label'");
  }
  const ObjList dom = parse_object_list(text.substr(0, arrow));
  const std::string cod_name = trim(text.substr(arrow + 2, colon - arrow - 2));
  const auto cod = find_object(cod_name);
  if (!cod) throw SchemaError("", name() + ": unknown object '" + cod_name + "'");
  const std::string label = trim(text.substr(colon + 1));
  for (auto& f : hom(dom, *cod, cap)) {
    if (describe_label(f) == label) return f;
  }
  throw SchemaError("", name() + ": no arrow '" + std::string(text) + "'");
}

ObjList MultiFunctor::map_objects(const ObjList& objs) const {
  ObjList out;
  out.reserve(objs.size());
  for (ObjId x : objs) out.push_back(on_objects(x));
  return out;
}

MultiFunctor identity_multifunctor(MulticategoryPtr m) {
  return MultiFunctor{"id", m, m, [](ObjId x) { return x; },
                      [](const MultiArrow& f) { return f; }};
}

MultiFunctor compose_multifunctors(const MultiFunctor& g, const MultiFunctor& f) {
  return MultiFunctor{g.name + "∘" + f.name, f.source, g.target,
                      [g, f](ObjId x) { return g.on_objects(f.on_objects(x)); },
                      [g, f](const MultiArrow& a) { return g.on_arrows(f.on_arrows(a)); }};
}

// ---------------------------------------------------------------------------
// HomEnumerator

HomEnumerator::HomEnumerator(const Multicategory& m, const CheckBounds& bounds)
    : m_(m), bounds_(bounds) {
  const std::uint64_t n = m.object_count();
  if (bounds.max_objects == 0 || n <= bounds.max_objects) {
    if (n > bounds.hom_cap) {
      throw EnumerationOverflow(m.name() + ": " + std::to_string(n) +
                                " objects exceed the cap; set an object sample size");
    }
    for (std::uint64_t i = 0; i < n; ++i) objects_.push_back(m.object_at(i));
    return;
  }
  std::mt19937_64 rng(bounds.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  std::set<std::uint64_t> chosen;
  while (chosen.size() < bounds.max_objects) chosen.insert(pick(rng));
  for (auto i : chosen) objects_.push_back(m.object_at(i));
}

const std::vector<MultiArrow>& HomEnumerator::hom(const ObjList& dom, ObjId cod) {
  auto key = std::make_pair(dom, cod);
  auto it = hom_cache_.find(key);
  if (it == hom_cache_.end()) {
    it = hom_cache_.emplace(std::move(key), m_.hom(dom, cod, bounds_.hom_cap)).first;
  }
  return it->second;
}

const std::vector<MultiArrow>& HomEnumerator::arrows_from(const ObjList& dom) {
  auto it = from_cache_.find(dom);
  if (it == from_cache_.end()) {
    it = from_cache_.emplace(dom, m_.arrows_from(dom, bounds_.hom_cap)).first;
  }
  return it->second;
}

std::vector<ObjList> HomEnumerator::lists(std::size_t min_len, std::size_t max_len) const {
  std::vector<ObjList> out;
  std::vector<ObjList> level = {ObjList{}};
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (len >= min_len) out.insert(out.end(), level.begin(), level.end());
    if (len == max_len) break;
    std::vector<ObjList> next;
    next.reserve(level.size() * objects_.size());
    for (const auto& l : level) {
      for (ObjId x : objects_) {
        next.push_back(l);
        next.back().push_back(x);
      }
    }
    level = std::move(next);
  }
  return out;
}

void HomEnumerator::for_each_arrow(std::size_t max_arity,
                                   const std::function<void(const MultiArrow&)>& visit) {
  for (const auto& dom : lists(0, max_arity)) {
    for (const auto& f : arrows_from(dom)) visit(f);
  }
}

void HomEnumerator::for_each_args(
    const ObjList& cods, std::size_t max_total,
    const std::function<void(const std::vector<MultiArrow>&)>& visit) {
  const std::vector<ObjList> doms = lists(0, max_total);
  std::vector<MultiArrow> current;
  current.reserve(cods.size());
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t slot, std::size_t budget) {
    if (slot == cods.size()) {
      visit(current);
      return;
    }
    for (const auto& d : doms) {
      if (d.size() > budget) continue;
      for (const auto& g : hom(d, cods[slot])) {
        current.push_back(g);
        rec(slot + 1, budget - d.size());
        current.pop_back();
      }
    }
  };
  rec(0, max_total);
}

// ---------------------------------------------------------------------------
// Checkers

namespace {

std::string args_text(const Multicategory& m, const std::vector<MultiArrow>& args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) s += ", ";
    s += m.describe_label(args[i]);
  }
  return s + ")";
}

}  // namespace

LawReport check_multicategory(const Multicategory& m, const CheckBounds& bounds) {
  LawReport report("multicategory " + m.name());
  report.set_violation_limit(bounds.violation_limit);
  HomEnumerator en(m, bounds);
  const std::size_t a = bounds.arity_bound;

  for (ObjId x : en.objects()) {
    const MultiArrow id = m.identity(x);
    report.expect(id.dom == ObjList{x} && id.cod == x && m.contains(id), "identity typing",
                  [&] { return "identity of " + m.object_name(x) + " is " + m.describe(id); });
  }

  en.for_each_arrow(a, [&](const MultiArrow& f) {
    report.expect(m.contains(f), "membership",
                  [&] { return "enumerated arrow " + m.describe(f) + " fails membership"; });
    const MultiArrow left = m.compose_raw(m.identity(f.cod), std::vector<MultiArrow>{f});
    report.expect(left == f, "left identity", [&] {
      return "id(" + m.describe_label(f) + ") = " + m.describe(left) + ", expected " + m.describe(f);
    });
    std::vector<MultiArrow> ids;
    for (ObjId x : f.dom) ids.push_back(m.identity(x));
    const MultiArrow right = m.compose_raw(f, ids);
    report.expect(right == f, "right identity", [&] {
      return m.describe_label(f) + "(id,…,id) = " + m.describe(right) + ", expected " +
             m.describe(f);
    });
  });

  en.for_each_arrow(a, [&](const MultiArrow& f) {
    en.for_each_args(f.dom, a, [&](const std::vector<MultiArrow>& gs) {
      const MultiArrow fg = m.compose_raw(f, gs);
      ObjList flat;
      for (const auto& g : gs) flat.insert(flat.end(), g.dom.begin(), g.dom.end());
      const bool typed = fg.dom == flat && fg.cod == f.cod && m.contains(fg);
      report.expect(typed, "composite typing", [&] {
        return m.describe_label(f) + args_text(m, gs) + " = " + m.describe(fg) +
               " is not in hom(" + m.describe_list(flat) + "; " + m.object_name(f.cod) + ")";
      });
      if (!typed) return;
      en.for_each_args(flat, a, [&](const std::vector<MultiArrow>& hs) {
        const MultiArrow lhs = m.compose_raw(fg, hs);
        std::vector<MultiArrow> inner;
        inner.reserve(gs.size());
        std::size_t pos = 0;
        for (const auto& g : gs) {
          std::vector<MultiArrow> block(hs.begin() + static_cast<std::ptrdiff_t>(pos),
                                        hs.begin() + static_cast<std::ptrdiff_t>(pos + g.arity()));
          pos += g.arity();
          inner.push_back(m.compose_raw(g, block));
        }
        const MultiArrow rhs = m.compose_raw(f, inner);
        report.expect(lhs == rhs, "associativity", [&] {
          return "(" + m.describe_label(f) + args_text(m, gs) + ")" + args_text(m, hs) + " = " +
                 m.describe_label(lhs) + " but " + m.describe_label(f) + args_text(m, inner) +
                 " = " + m.describe_label(rhs);
        });
      });
    });
  });
  return report;
}

LawReport check_functor(const MultiFunctor& f, const CheckBounds& bounds) {
  const Multicategory& s = *f.source;
  const Multicategory& t = *f.target;
  LawReport report("functor " + (f.name.empty() ? s.name() + " → " + t.name() : f.name));
  report.set_violation_limit(bounds.violation_limit);
  HomEnumerator en(s, bounds);
  const std::size_t a = bounds.arity_bound;

  for (ObjId x : en.objects()) {
    const MultiArrow img = f.on_arrows(s.identity(x));
    report.expect(img == t.identity(f.on_objects(x)), "identity", [&] {
      return "F(id_" + s.object_name(x) + ") = " + t.describe(img) + " is not an identity";
    });
  }

  bool typed = true;
  en.for_each_arrow(a, [&](const MultiArrow& g) {
    const MultiArrow img = f.on_arrows(g);
    typed &= report.expect(
        img.dom == f.map_objects(g.dom) && img.cod == f.on_objects(g.cod) && t.contains(img),
        "typing", [&] { return "F(" + s.describe(g) + ") = " + t.describe(img) + " is mistyped"; });
  });
  if (!typed) return report;

  en.for_each_arrow(a, [&](const MultiArrow& g) {
    const MultiArrow fg = f.on_arrows(g);
    en.for_each_args(g.dom, a, [&](const std::vector<MultiArrow>& hs) {
      const MultiArrow lhs = f.on_arrows(s.compose_raw(g, hs));
      std::vector<MultiArrow> images;
      images.reserve(hs.size());
      for (const auto& h : hs) images.push_back(f.on_arrows(h));
      const MultiArrow rhs = t.compose_raw(fg, images);
      report.expect(lhs == rhs, "composition", [&] {
        return "F(" + s.describe_label(g) + args_text(s, hs) + ") = " + t.describe_label(lhs) +
               " but F" + s.describe_label(g) + "(F…) = " + t.describe_label(rhs);
      });
    });
  });
  return report;
}

std::vector<MultiArrow> unary_arrows(const Multicategory& m, std::size_t cap) {
  const std::uint64_t k = m.object_count();
  if (k > cap) throw EnumerationOverflow(m.name() + ": too many objects for underlying category");
  std::vector<MultiArrow> unary;
  for (std::uint64_t i = 0; i < k; ++i) {
    for (std::uint64_t j = 0; j < k; ++j) {
      for (auto& f : m.hom(ObjList{ObjId{i}}, ObjId{j}, cap)) {
        unary.push_back(std::move(f));
        if (unary.size() > cap) throw EnumerationOverflow(m.name() + ": too many unary arrows");
      }
    }
  }
  return unary;
}

FinCategory underlying_category(const Multicategory& m, std::size_t cap) {
  const std::vector<MultiArrow> unary = unary_arrows(m, cap);
  const std::uint64_t k = m.object_count();
  std::vector<std::string> objects;
  for (std::uint64_t i = 0; i < k; ++i) objects.push_back(m.object_name(ObjId{i}));
  std::vector<FinCategory::Arrow> arrows;
  std::map<MultiArrow, ArrowId> index;
  for (const auto& f : unary) {
    index.emplace(f, arrows.size());
    arrows.push_back({m.describe_label(f), f.dom[0].value, f.cod.value});
  }
  std::vector<ArrowId> ids;
  for (std::uint64_t i = 0; i < k; ++i) ids.push_back(index.at(m.identity(ObjId{i})));
  const std::size_t n = unary.size();
  std::vector<std::int64_t> comp(n * n, FinCategory::kUndefined);
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId f = 0; f < n; ++f) {
      if (arrows[f].cod != arrows[g].dom) continue;
      const MultiArrow gf = m.compose_raw(unary[g], std::vector<MultiArrow>{unary[f]});
      comp[g * n + f] = static_cast<std::int64_t>(index.at(gf));
    }
  }
  return FinCategory(m.name() + "/unary", std::move(objects), std::move(arrows), std::move(ids),
                     std::move(comp));
}

// ---------------------------------------------------------------------------
// Functor search

namespace {

struct Instance {
  std::size_t f;
  std::vector<std::size_t> args;
  std::size_t result;
};

class FunctorSearch {
 public:
  FunctorSearch(const Multicategory& m, const Multicategory& n,
                const std::function<ObjId(ObjId)>& on_objects, const CheckBounds& bounds,
                bool bijective, std::size_t max_results, std::size_t max_nodes)
      : m_(m),
        n_(n),
        phi_(on_objects),
        bounds_(bounds),
        bijective_(bijective),
        max_results_(max_results),
        max_nodes_(max_nodes) {}

  FunctorSearchResult run() {
    HomEnumerator en(m_, bounds_);
    const std::size_t a = bounds_.arity_bound;
    // Arrows ordered by arity so that composites tend to come after their parts.
    for (std::size_t len = 0; len <= a; ++len) {
      for (const auto& dom : en.lists(len, len)) {
        for (const auto& f : en.arrows_from(dom)) {
          index_.emplace(f, arrows_.size());
          arrows_.push_back(f);
        }
      }
    }
    at_.resize(arrows_.size());
    forced_identity_.assign(arrows_.size(), false);
    for (ObjId x : en.objects()) {
      auto it = index_.find(m_.identity(x));
      if (it != index_.end()) forced_identity_[it->second] = true;
    }
    en.for_each_arrow(a, [&](const MultiArrow& f) {
      en.for_each_args(f.dom, a, [&](const std::vector<MultiArrow>& gs) {
        Instance inst{index_.at(f), {}, 0};
        for (const auto& g : gs) inst.args.push_back(index_.at(g));
        const MultiArrow r = m_.compose_raw(f, gs);
        auto it = index_.find(r);
        if (it == index_.end()) return;  // composite outside the sampled objects
        inst.result = it->second;
        std::size_t last = std::max(inst.f, inst.result);
        for (auto g : inst.args) last = std::max(last, g);
        at_[last].push_back(std::move(inst));
      });
    });
    if (bijective_ && !sizes_match(en)) return {};
    image_.resize(arrows_.size());
    assigned_.assign(arrows_.size(), false);
    extend(0);
    return FunctorSearchResult{std::move(results_), nodes_};
  }

 private:
  bool sizes_match(HomEnumerator& en) {
    for (const auto& dom : en.lists(0, bounds_.arity_bound)) {
      for (ObjId x : en.objects()) {
        const auto& h = en.hom(dom, x);
        ObjList img;
        for (ObjId y : dom) img.push_back(phi_(y));
        if (n_.hom(img, phi_(x), bounds_.hom_cap).size() != h.size()) return false;
      }
    }
    return true;
  }

  const std::vector<MultiArrow>& candidates(const MultiArrow& f) {
    ObjList dom;
    for (ObjId y : f.dom) dom.push_back(phi_(y));
    auto key = std::make_pair(std::move(dom), phi_(f.cod));
    auto it = targets_.find(key);
    if (it == targets_.end()) {
      auto h = n_.hom(key.first, key.second, bounds_.hom_cap);
      it = targets_.emplace(std::move(key), std::move(h)).first;
    }
    return it->second;
  }

  MultiArrow image_of(const Instance& inst) const {
    std::vector<MultiArrow> args;
    args.reserve(inst.args.size());
    for (auto g : inst.args) args.push_back(image_[g]);
    return n_.compose_raw(image_[inst.f], args);
  }

  bool consistent(std::size_t pos) const {
    for (const auto& inst : at_[pos]) {
      if (image_of(inst) != image_[inst.result]) return false;
    }
    return true;
  }

  bool try_assign(std::size_t pos, const MultiArrow& value) {
    if (bijective_ && used_.count(value) > 0) return false;
    image_[pos] = value;
    assigned_[pos] = true;
    if (bijective_) used_.insert(value);
    if (consistent(pos)) extend(pos + 1);
    if (bijective_) used_.erase(value);
    assigned_[pos] = false;
    return true;
  }

  void extend(std::size_t pos) {
    if (results_.size() >= max_results_) return;
    if (++nodes_ > max_nodes_) {
      throw EnumerationOverflow("functor search exceeded " + std::to_string(max_nodes_) + " nodes");
    }
    if (pos == arrows_.size()) {
      std::map<MultiArrow, MultiArrow> map;
      for (std::size_t i = 0; i < arrows_.size(); ++i) map.emplace(arrows_[i], image_[i]);
      results_.push_back(std::move(map));
      return;
    }
    const MultiArrow& f = arrows_[pos];
    if (forced_identity_[pos]) {
      try_assign(pos, n_.identity(phi_(f.cod)));
      return;
    }
    for (const auto& inst : at_[pos]) {
      if (inst.result == pos && inst.f != pos &&
          std::none_of(inst.args.begin(), inst.args.end(), [pos](auto g) { return g == pos; })) {
        const MultiArrow forced = image_of(inst);
        ObjList dom;
        for (ObjId y : f.dom) dom.push_back(phi_(y));
        if (forced.dom == dom && forced.cod == phi_(f.cod)) try_assign(pos, forced);
        return;
      }
    }
    for (const auto& c : candidates(f)) {
      try_assign(pos, c);
      if (results_.size() >= max_results_) return;
    }
  }

  const Multicategory& m_;
  const Multicategory& n_;
  const std::function<ObjId(ObjId)>& phi_;
  CheckBounds bounds_;
  bool bijective_;
  std::size_t max_results_;
  std::size_t max_nodes_;

  std::vector<MultiArrow> arrows_;
  std::map<MultiArrow, std::size_t> index_;
  std::vector<std::vector<Instance>> at_;
  std::vector<bool> forced_identity_;
  std::map<std::pair<ObjList, ObjId>, std::vector<MultiArrow>> targets_;
  std::vector<MultiArrow> image_;
  std::vector<bool> assigned_;
  std::set<MultiArrow> used_;
  std::vector<std::map<MultiArrow, MultiArrow>> results_;
  std::size_t nodes_ = 0;
};

}  // namespace

FunctorSearchResult search_functors(const Multicategory& m, const Multicategory& n,
                                    const std::function<ObjId(ObjId)>& on_objects,
                                    const CheckBounds& bounds, bool bijective,
                                    std::size_t max_results, std::size_t max_nodes) {
  return FunctorSearch(m, n, on_objects, bounds, bijective, max_results, max_nodes).run();
}

std::optional<std::map<MultiArrow, MultiArrow>> find_isomorphism(
    const Multicategory& m, const Multicategory& n, const std::function<ObjId(ObjId)>& on_objects,
    const CheckBounds& bounds) {
  if (m.object_count() != n.object_count()) return std::nullopt;
  std::set<ObjId> image;
  for (std::uint64_t i = 0; i < m.object_count(); ++i) {
    const ObjId y = on_objects(m.object_at(i));
    if (!n.has_object(y) || !image.insert(y).second) return std::nullopt;
  }
  auto result = search_functors(m, n, on_objects, bounds, true, 1);
  if (result.maps.empty()) return std::nullopt;
  return std::move(result.maps.front());
}

}  // namespace multikat

namespace multikat {

// ---------------------------------------------------------------------------
// TabulatedMulticategory

TabulatedMulticategory::TabulatedMulticategory(std::string name, std::vector<std::string> objects,
                                               std::size_t arity_bound, std::vector<Arrow> arrows,
                                               std::vector<std::size_t> identities,
                                               std::vector<Entry> composition)
    : name_(std::move(name)),
      objects_(std::move(objects)),
      arity_bound_(arity_bound),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      entries_(std::move(composition)) {
  const std::size_t k = objects_.size();
  const std::size_t n = arrows_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = arrows_[i];
    if (a.dom.size() > arity_bound_) {
      throw SchemaError("/arrows/" + std::to_string(i), "arity exceeds the declared bound");
    }
    bool ok = a.cod.value < k;
    for (ObjId x : a.dom) ok &= x.value < k;
    if (!ok) throw SchemaError("/arrows/" + std::to_string(i), "unknown object");
  }
  if (identities_.size() != k) throw SchemaError("/identities", "need one identity per object");
  for (std::size_t x = 0; x < k; ++x) {
    const auto i = identities_[x];
    if (i >= n || arrows_[i].dom != ObjList{ObjId{x}} || arrows_[i].cod != ObjId{x}) {
      throw SchemaError("/identities/" + std::to_string(x), "not an endo-arrow of its object");
    }
  }
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const auto& entry = entries_[e];
    const std::string where = "/composition/" + std::to_string(e);
    if (entry.f >= n || entry.result >= n) throw SchemaError(where, "unknown arrow");
    const auto& f = arrows_[entry.f];
    if (entry.args.size() != f.dom.size()) throw SchemaError(where, "wrong number of arguments");
    ObjList flat;
    for (std::size_t i = 0; i < entry.args.size(); ++i) {
      if (entry.args[i] >= n) throw SchemaError(where, "unknown arrow");
      const auto& g = arrows_[entry.args[i]];
      if (g.cod != f.dom[i]) throw SchemaError(where, "argument codomain mismatch");
      flat.insert(flat.end(), g.dom.begin(), g.dom.end());
    }
    const auto& r = arrows_[entry.result];
    if (r.dom != flat || r.cod != f.cod) throw SchemaError(where, "result is mistyped");
    std::vector<std::size_t> key{entry.f};
    key.insert(key.end(), entry.args.begin(), entry.args.end());
    if (!table_.emplace(std::move(key), entry.result).second) {
      throw SchemaError(where, "duplicate composition entry");
    }
  }
  // Identity composites.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = arrows_[i];
    table_.emplace(std::vector<std::size_t>{identities_[f.cod.value], i}, i);
    std::vector<std::size_t> key{i};
    for (ObjId x : f.dom) key.push_back(identities_[x.value]);
    table_.emplace(std::move(key), i);
  }
  // Closure up to the arity bound.
  std::vector<std::vector<std::size_t>> into(k);
  for (std::size_t i = 0; i < n; ++i) into[arrows_[i].cod.value].push_back(i);
  std::vector<std::size_t> key;
  std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t f,
                                                                       std::size_t slot,
                                                                       std::size_t total) {
    const auto& fa = arrows_[f];
    if (slot == fa.dom.size()) {
      if (table_.count(key) == 0) {
        std::string text = fa.name + "(";
        for (std::size_t j = 1; j < key.size(); ++j) text += (j > 1 ? "," : "") + arrows_[key[j]].name;
        throw SchemaError("/composition", "missing composite " + text + ")");
      }
      return;
    }
    for (std::size_t g : into[fa.dom[slot].value]) {
      const std::size_t t = total + arrows_[g].dom.size();
      if (t > arity_bound_) continue;
      key.push_back(g);
      rec(f, slot + 1, t);
      key.pop_back();
    }
  };
  for (std::size_t f = 0; f < n; ++f) {
    key.assign(1, f);
    rec(f, 0, 0);
  }
}

MultiArrow TabulatedMulticategory::arrow(std::size_t i) const {
  const auto& a = arrows_.at(i);
  return MultiArrow{a.dom, a.cod, {static_cast<std::int64_t>(i)}};
}

std::vector<MultiArrow> TabulatedMulticategory::hom(const ObjList& dom, ObjId cod,
                                                    std::size_t cap) const {
  std::vector<MultiArrow> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].dom == dom && arrows_[i].cod == cod) out.push_back(arrow(i));
  }
  if (out.size() > cap) throw EnumerationOverflow(name_ + ": hom-set exceeds cap");
  return out;
}

bool TabulatedMulticategory::contains(const MultiArrow& f) const {
  if (f.label.size() != 1 || f.label[0] < 0) return false;
  const auto i = static_cast<std::size_t>(f.label[0]);
  return i < arrows_.size() && arrows_[i].dom == f.dom && arrows_[i].cod == f.cod;
}

MultiArrow TabulatedMulticategory::identity(ObjId x) const { return arrow(identities_.at(x.value)); }

std::string TabulatedMulticategory::describe_label(const MultiArrow& f) const {
  if (!contains(f)) return "?";
  return arrows_[static_cast<std::size_t>(f.label[0])].name;
}

MultiArrow TabulatedMulticategory::do_compose(const MultiArrow& f,
                                              std::span<const MultiArrow> args) const {
  std::vector<std::size_t> key{static_cast<std::size_t>(f.label.at(0))};
  for (const auto& g : args) key.push_back(static_cast<std::size_t>(g.label.at(0)));
  auto it = table_.find(key);
  if (it == table_.end()) {
    std::size_t total = 0;
    for (const auto& g : args) total += g.arity();
    throw EnumerationOverflow(name_ + ": composite of arity " + std::to_string(total) +
                              " is beyond the tabulated bound");
  }
  return arrow(it->second);
}

}  // namespace multikat
