#include "multikat/workbench.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "multikat/constructions.hpp"
#include "multikat/errors.hpp"
#include "multikat/fibrations.hpp"

namespace multikat {

// ---- configuration ----------------------------------------------------------

void WorkbenchConfig::validate() const {
  if (arity_bound == 0) throw SchemaError("/arity_bound", "must be positive");
  if (hom_cap == 0) throw SchemaError("/hom_cap", "must be positive");
  if (carrier_cap == 0) throw SchemaError("/carrier_cap", "must be positive");
  if (grid_size == 0 || grid_size > 8) throw SchemaError("/grid_size", "must be between 1 and 8");
  if (seed == 0) throw SchemaError("/seed", "must be positive");
}

CheckBounds WorkbenchConfig::bounds() const {
  CheckBounds b;
  b.arity_bound = arity_bound;
  b.hom_cap = hom_cap;
  b.seed = seed;
  return b;
}

WorkbenchConfig config_from_json(const Json& j, WorkbenchConfig base) {
  if (!j.is_object()) throw SchemaError("/", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string where = "/" + it.key();
    if (!it.value().is_number_integer() || it.value().get<std::int64_t>() < 0) throw SchemaError(where, "expected a non-negative integer");
    const auto v = it.value().get<std::uint64_t>();
    if (it.key() == "arity_bound") base.arity_bound = v;
    else if (it.key() == "hom_cap") base.hom_cap = v;
    else if (it.key() == "carrier_cap") base.carrier_cap = v;
    else if (it.key() == "grid_size") base.grid_size = v;
    else if (it.key() == "seed") base.seed = v;
    else throw SchemaError(where, "unknown setting");
  }
  base.validate();
  return base;
}

WorkbenchConfig config_from_env() {
  const char* path = std::getenv("MULTIKAT_CONFIG");
  if (path == nullptr || *path == '\0') return {};
  const Json j = read_json_file(path);
  try {
    return config_from_json(j);
  } catch (const SchemaError& e) {
    throw SchemaError(std::string(path) + e.where(), e.what());
  }
}

// ---- oracles ----------------------------------------------------------------

std::vector<std::vector<std::size_t>> oracle_isometries(std::size_t n) {
  const long k = static_cast<long>(n);
  auto wrap = [k](long v) { return static_cast<std::size_t>(((v % k) + k) % k); };
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> out;
  // Rows of the 8 signed permutation matrices.
  const int mats[8][4] = {{1, 0, 0, 1},  {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
                          {-1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0},   {0, -1, -1, 0}};
  for (const auto& m : mats) {
    for (long dy = 0; dy < k; ++dy) {
      for (long dx = 0; dx < k; ++dx) {
        std::vector<std::size_t> perm(n * n);
        for (long y = 0; y < k; ++y) {
          for (long x = 0; x < k; ++x) {
            const std::size_t nx = wrap(m[0] * x + m[1] * y + dx);
            const std::size_t ny = wrap(m[2] * x + m[3] * y + dy);
            perm[static_cast<std::size_t>(y * k + x)] = ny * n + nx;
          }
        }
        if (seen.insert(perm).second) out.push_back(std::move(perm));
      }
    }
  }
  return out;
}

namespace {

std::uint64_t full_mask(std::size_t n) {
  return n * n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n * n)) - 1;
}

/// Distinct images of each piece under every isometry.
std::vector<std::vector<std::uint64_t>> placements(std::size_t n,
                                                   const std::vector<std::uint64_t>& pieces) {
  const auto isos = oracle_isometries(n);
  std::vector<std::vector<std::uint64_t>> out;
  for (std::uint64_t a : pieces) {
    std::set<std::uint64_t> images;
    for (const auto& perm : isos) {
      std::uint64_t img = 0;
      for (std::size_t c = 0; c < n * n; ++c) {
        if ((a >> c) & 1u) img |= std::uint64_t{1} << perm[c];
      }
      images.insert(img);
    }
    out.emplace_back(images.begin(), images.end());
  }
  return out;
}

/// Visits every fold of one placement per piece; `step` combines and may
/// return nullopt to cut the branch. `visit` returns true to stop.
bool fold_placements(const std::vector<std::vector<std::uint64_t>>& places, std::size_t i,
                     std::uint64_t acc,
                     const std::function<std::optional<std::uint64_t>(std::uint64_t, std::uint64_t)>& step,
                     const std::function<bool(std::uint64_t)>& visit) {
  if (i == places.size()) return visit(acc);
  for (std::uint64_t img : places[i]) {
    auto next = step(acc, img);
    if (next && fold_placements(places, i + 1, *next, step, visit)) return true;
  }
  return false;
}

std::uint64_t tangram_union(std::uint64_t a, std::uint64_t b, std::uint64_t full) {
  return (a & b) != 0 ? full : (a | b);
}

void check_figures(std::size_t n, const std::vector<std::uint64_t>& figs, std::uint64_t target) {
  if (n == 0 || n > 8) throw SchemaError("/grid", "torus size must be between 1 and 8");
  const std::uint64_t full = full_mask(n);
  for (auto f : figs) {
    if ((f & ~full) != 0) throw SchemaError("/pieces", "figure outside the grid");
  }
  if ((target & ~full) != 0) throw SchemaError("/target", "figure outside the grid");
}

}  // namespace

std::vector<bool> oracle_span_targets(const RigModule& m, const std::vector<std::size_t>& elems) {
  std::vector<bool> hit(m.size(), false);
  const std::size_t r = m.rig.size();
  std::vector<std::size_t> alpha(elems.size(), 0);
  while (true) {
    std::size_t sum = m.carrier.unit;
    for (std::size_t i = 0; i < elems.size(); ++i) sum = m.carrier.op(sum, m.act(alpha[i], elems[i]));
    hit[sum] = true;
    std::size_t i = 0;
    while (i < alpha.size() && ++alpha[i] == r) alpha[i++] = 0;
    if (i == alpha.size()) break;
  }
  return hit;
}

bool oracle_span(const RigModule& m, const std::vector<std::size_t>& elems, std::size_t target) {
  return oracle_span_targets(m, elems).at(target);
}

bool oracle_tangram(std::size_t n, const std::vector<std::uint64_t>& pieces, std::uint64_t target) {
  check_figures(n, pieces, target);
  const std::uint64_t full = full_mask(n);
  return fold_placements(
      placements(n, pieces), 0, 0,
      [&](std::uint64_t acc, std::uint64_t img) -> std::optional<std::uint64_t> {
        const std::uint64_t next = tangram_union(acc, img, full);
        if ((next & ~target) != 0) return std::nullopt;
        return next;
      },
      [&](std::uint64_t acc) { return acc == target; });
}

bool oracle_cover(std::size_t n, const std::vector<std::uint64_t>& pieces, std::uint64_t target) {
  check_figures(n, pieces, target);
  return fold_placements(
      placements(n, pieces), 0, 0,
      [](std::uint64_t acc, std::uint64_t img) -> std::optional<std::uint64_t> { return acc | img; },
      [&](std::uint64_t acc) { return (target & ~acc) == 0; });
}

std::vector<bool> oracle_tangram_targets(std::size_t n, const std::vector<std::uint64_t>& pieces) {
  if (n == 0 || n > 4) throw EnumerationOverflow("bulk oracle needs a grid of size at most 4");
  const std::uint64_t full = full_mask(n);
  std::vector<bool> hit(full + 1, false);
  fold_placements(
      placements(n, pieces), 0, 0,
      [&](std::uint64_t acc, std::uint64_t img) -> std::optional<std::uint64_t> {
        return tangram_union(acc, img, full);
      },
      [&](std::uint64_t acc) {
        hit[acc] = true;
        return false;
      });
  return hit;
}

std::vector<bool> oracle_cover_targets(std::size_t n, const std::vector<std::uint64_t>& pieces) {
  if (n == 0 || n > 4) throw EnumerationOverflow("bulk oracle needs a grid of size at most 4");
  const std::uint64_t full = full_mask(n);
  std::vector<bool> hit(full + 1, false);
  fold_placements(
      placements(n, pieces), 0, 0,
      [](std::uint64_t acc, std::uint64_t img) -> std::optional<std::uint64_t> { return acc | img; },
      [&](std::uint64_t acc) {
        hit[acc] = true;
        return false;
      });
  // Close downward: a target is covered when some reachable union contains it.
  for (std::size_t bit = 0; bit < n * n; ++bit) {
    for (std::uint64_t m = 0; m <= full; ++m) {
      if (!((m >> bit) & 1u) && hit[m | (std::uint64_t{1} << bit)]) hit[m] = true;
    }
  }
  return hit;
}

bool oracle_entails(QueryKind kind, const std::vector<std::uint64_t>& elems, std::uint64_t target,
                    const RigModule* module, std::size_t grid) {
  switch (kind) {
    case QueryKind::span: {
      if (module == nullptr) throw SchemaError("/module", "span oracle needs a module");
      std::vector<std::size_t> xs;
      for (auto e : elems) {
        if (e >= module->size()) throw SchemaError("/elems", "element out of range");
        xs.push_back(static_cast<std::size_t>(e));
      }
      if (target >= module->size()) throw SchemaError("/target", "element out of range");
      return oracle_span(*module, xs, static_cast<std::size_t>(target));
    }
    case QueryKind::tangram: return oracle_tangram(grid, elems, target);
    case QueryKind::cover: return oracle_cover(grid, elems, target);
  }
  return false;
}

// ---- loading ----------------------------------------------------------------

namespace {

Json load_doc(const std::string& path, Kind expected) {
  Json doc = read_json_file(path);
  const Kind k = document_kind(doc);
  if (k != expected)
    throw SchemaError(path + ":/kind", "expected kind " + kind_name(expected) + ", got " + kind_name(k));
  return doc;
}

/// Locations inside a file are reported as "path:/pointer".
template <typename F>
auto in_file(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SchemaError& e) {
    if (!e.where().empty() && e.where().front() == '/') {
      std::string what = e.what();
      const std::string prefix = e.where() + ": ";
      if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
      throw SchemaError(path + ":" + e.where(), what);
    }
    throw;
  }
}

void cap_carrier(std::size_t size, std::size_t cap, const std::string& what) {
  if (size > cap)
    throw EnumerationOverflow(what + " has " + std::to_string(size) + " elements; carrier_cap is " +
                              std::to_string(cap));
}

FinCategory load_category(const std::string& ref) {
  if (auto c = builtin_category(ref)) return *c;
  return in_file(ref, [&] {
    const Json doc = read_json_file(ref);
    switch (document_kind(doc)) {
      case Kind::category: return category_from_json(doc);
      case Kind::preadditive: return *preadditive_from_json(doc).base;
      case Kind::rig: return *rig_category(rig_from_json(doc));
      default: throw SchemaError("/kind", "expected a category, preadditive category or rig");
    }
  });
}

FinRig load_rig(const std::string& ref, const WorkbenchConfig& config) {
  FinRig r = builtin_rig(ref) ? *builtin_rig(ref)
                              : in_file(ref, [&] { return rig_from_json(load_doc(ref, Kind::rig)); });
  cap_carrier(r.size(), config.carrier_cap, "rig " + r.name);
  return r;
}

RigModule load_module(const std::string& ref, const WorkbenchConfig& config) {
  RigModule m = builtin_module(ref)
                    ? *builtin_module(ref)
                    : in_file(ref, [&] { return module_from_json(load_doc(ref, Kind::module)); });
  cap_carrier(m.size(), config.carrier_cap, "module " + m.carrier.name);
  cap_carrier(m.rig.size(), config.carrier_cap, "rig " + m.rig.name);
  return m;
}

PreadditiveFinCat load_preadditive(const std::string& ref, const WorkbenchConfig& config) {
  if (auto c = builtin_preadditive(ref)) return *c;
  return in_file(ref, [&] {
    const Json doc = read_json_file(ref);
    switch (document_kind(doc)) {
      case Kind::preadditive: return preadditive_from_json(doc);
      case Kind::rig: {
        FinRig r = rig_from_json(doc);
        cap_carrier(r.size(), config.carrier_cap, "rig " + r.name);
        return rig_to_preadditive(r);
      }
      default: throw SchemaError("/kind", "expected a preadditive category or rig");
    }
  });
}

std::vector<FinSetObj> parse_set_sizes(std::string_view text, const WorkbenchConfig& config) {
  std::vector<FinSetObj> sets;
  for (const auto& part : split_top_level(text, ',')) {
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoul(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw SchemaError("/sets", "expected a set size, got '" + part + "'");
    }
    if (k == 0) throw SchemaError("/sets", "set sizes must be positive");
    cap_carrier(k, config.carrier_cap, "set");
    FinSetObj s{"S" + std::to_string(sets.size()), {}};
    for (std::size_t i = 0; i < k; ++i) s.elements.push_back(std::to_string(i));
    sets.push_back(std::move(s));
  }
  if (sets.empty()) throw SchemaError("/sets", "no sets given");
  return sets;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(';', start);
    out.emplace_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

NamedMulticategory load_multicategory(std::string_view spec, const WorkbenchConfig& config) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw SchemaError("/multicat", "expected construction:argument, got '" + std::string(spec) + "'");
  const std::string kind(spec.substr(0, colon));
  const std::string arg(spec.substr(colon + 1));
  if (kind == "cocone") {
    auto c = std::make_shared<const FinCategory>(load_category(arg));
    return {discrete_cocone(c), std::nullopt};
  }
  if (kind == "linear") {
    auto c = std::make_shared<const FinCategory>(load_category(arg));
    return {linear(c), std::nullopt};
  }
  if (kind == "setx") {
    auto s = rep_of_finsets(parse_set_sizes(arg, config));
    return {s, fp_of_finsets(s)};
  }
  if (kind == "tab") {
    return {in_file(arg, [&] { return tabulated_from_json(load_doc(arg, Kind::multicat_tab)); }),
            std::nullopt};
  }
  if (kind == "rig") {
    CartesianMulticategory cm = rig_operad(load_rig(arg, config));
    return {cm.multicat, cm};
  }
  if (kind == "fp-preadditive") {
    CartesianMulticategory cm = fp_of_preadditive(load_preadditive(arg, config));
    return {cm.multicat, cm};
  }
  if (kind == "grothendieck") {
    if (builtin_module(arg)) {
      ModuleFibration mf = module_fibration(load_module(arg, config));
      return {mf.total.multicat, mf.total};
    }
    const Json doc = in_file(arg, [&] { return read_json_file(arg); });
    const Kind k = in_file(arg, [&] { return document_kind(doc); });
    if (k == Kind::module) {
      ModuleFibration mf = module_fibration(load_module(arg, config));
      return {mf.total.multicat, mf.total};
    }
    if (k == Kind::indexed_monoid) {
      return {grothendieck(in_file(arg, [&] { return indexed_monoid_from_json(doc); })).total,
              std::nullopt};
    }
    throw SchemaError(arg + ":/kind", "expected a module or indexed monoid");
  }
  throw SchemaError("/multicat", "unknown construction '" + kind + "'");
}

// ---- CLI --------------------------------------------------------------------

namespace {

struct Options {
  WorkbenchConfig config;
  std::size_t witness_limit = 16;
  bool bijections_only = false;
};

struct Reports {
  bool passed = true;
  std::ostream& out;

  void add(const LawReport& r) {
    out << r;
    passed = passed && r.passed();
  }
  int code() const { return passed ? 0 : 1; }
};

std::string join_sizes(const std::vector<std::size_t>& xs) {
  if (xs.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "×" : "") + std::to_string(xs[i]);
  return s;
}

/// Every object list of length ≤ bound over objects 0..objects-1.
std::vector<ObjList> object_lists(std::uint64_t objects, std::size_t bound) {
  std::vector<ObjList> out{{}};
  std::vector<ObjList> layer{{}};
  for (std::size_t n = 1; n <= bound; ++n) {
    std::vector<ObjList> next;
    for (const auto& l : layer) {
      for (std::uint64_t x = 0; x < objects; ++x) {
        ObjList e = l;
        e.push_back(ObjId{x});
        next.push_back(std::move(e));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// Hom-set sizes for all domains up to the arity bound. When `factors`
/// is given, each line also shows the predicted product and compares.
bool print_hom_sizes(const Multicategory& m, const Options& o, std::ostream& out,
                     const std::function<std::vector<std::size_t>(const ObjList&, ObjId)>& factors = nullptr) {
  constexpr std::uint64_t kShown = 8;
  const std::uint64_t k = std::min<std::uint64_t>(m.object_count(), kShown);
  out << m.name() << ": " << m.object_count() << " objects\n";
  bool ok = true;
  for (const auto& dom : object_lists(k, o.config.arity_bound)) {
    for (std::uint64_t x = 0; x < k; ++x) {
      const std::size_t size = m.hom(dom, ObjId{x}, o.config.hom_cap).size();
      out << "  |hom(" << m.describe_list(dom) << "; " << m.object_name(ObjId{x}) << ")| = " << size;
      if (factors) {
        const auto fs = factors(dom, ObjId{x});
        std::size_t prod = 1;
        for (auto f : fs) prod *= f;
        out << " = " << join_sizes(fs) << (prod == size ? "" : "  MISMATCH");
        ok = ok && prod == size;
      }
      out << '\n';
    }
  }
  if (m.object_count() > kShown) out << "  (first " << kShown << " objects shown)\n";
  return ok;
}

CheckBounds sampled_bounds(const Multicategory& m, const Options& o) {
  CheckBounds b = o.config.bounds();
  constexpr std::uint64_t kSample = 6;
  if (m.object_count() > 64) b.max_objects = kSample;
  return b;
}

int run_check(const std::string& file, const std::string& kind_flag, const Options& o,
              std::ostream& out) {
  const Json doc = read_json_file(file);
  return in_file(file, [&] {
    Kind kind = document_kind(doc);
    if (!kind_flag.empty()) {
      auto k = parse_kind(kind_flag);
      if (!k) throw SchemaError("/kind", "unknown kind '" + kind_flag + "'");
      if (*k != kind) throw SchemaError("/kind", "file is a " + kind_name(kind) + ", not a " + kind_flag);
    }
    const std::size_t cap = o.config.carrier_cap;
    Reports r{true, out};
    switch (kind) {
      case Kind::category: r.add(check_category(category_from_json(doc))); break;
      case Kind::monoid: {
        FinMonoid m = monoid_from_json(doc);
        cap_carrier(m.size(), cap, "monoid " + m.name);
        r.add(check_monoid(m));
        break;
      }
      case Kind::rig: {
        FinRig rig = rig_from_json(doc);
        cap_carrier(rig.size(), cap, "rig " + rig.name);
        r.add(check_rig(rig));
        break;
      }
      case Kind::preadditive: r.add(check_preadditive(preadditive_from_json(doc))); break;
      case Kind::module: {
        RigModule m = module_from_json(doc);
        cap_carrier(m.size(), cap, "module " + m.carrier.name);
        r.add(check_module(m));
        break;
      }
      case Kind::indexed_monoid: {
        IndexedMonoid im = indexed_monoid_from_json(doc);
        r.add(check_category(*im.base));
        FiberBounds fb;
        fb.seed = o.config.seed;
        r.add(check_indexed_monoid(im, fb));
        break;
      }
      case Kind::multicat_tab: {
        auto m = tabulated_from_json(doc);
        CheckBounds b = o.config.bounds();
        b.arity_bound = std::min(b.arity_bound, m->arity_bound());
        r.add(check_multicategory(*m, b));
        break;
      }
      case Kind::fp_functor: {
        RigModule g = fp_functor_from_json(doc);
        cap_carrier(g.size(), cap, "set " + g.carrier.name);
        r.add(check_fp_functor(generators_to_fp(g), o.config.bounds()));
        break;
      }
    }
    return r.code();
  });
}

int derive_mon(const std::string& spec, const Options& o, std::ostream& out) {
  const NamedMulticategory nm = load_multicategory(spec, o.config);
  const MonoidCategory mon = monoid_category(nm.multicat, o.config.hom_cap);
  const FinCategory& c = *mon.category;
  out << "Mon(" << nm.multicat->name() << "): " << c.object_count() << " monoids, " << c.arrow_count()
      << " morphisms\n";
  for (ObjIndex i = 0; i < c.object_count(); ++i) {
    const auto& m = mon.objects[i];
    out << "  " << c.objects()[i] << ": carrier " << nm.multicat->object_name(m.carrier) << ", unit "
        << nm.multicat->describe(m.unit) << ", mult " << nm.multicat->describe(m.mult) << '\n';
  }
  Reports r{true, out};
  r.add(check_category(c));
  if (auto cone = std::dynamic_pointer_cast<const CoconeMulticategory>(nm.multicat)) {
    const MonoidValuedFunctor g = transpose_to_cat(identity_multifunctor(cone));
    const bool iso = is_isomorphism(as_fin_functor(g, mon));
    out << "Mon(" << cone->name() << ") ≅ " << cone->base().name() << ": " << (iso ? "yes" : "no")
        << " (" << c.object_count() << " monoids, " << cone->base().object_count() << " objects)\n";
    r.passed = r.passed && iso;
  }
  return r.code();
}

int derive_cmon(const std::string& spec, const Options& o, std::ostream& out) {
  const NamedMulticategory nm = load_multicategory(spec, o.config);
  if (!nm.fp) throw SchemaError("/multicat", "cmon needs a multicategory with an fp-structure");
  const CmonCategory cm = cmon_category(*nm.fp, o.config.hom_cap);
  const FinCategory& c = *cm.category.base;
  out << "cMon(" << nm.multicat->name() << "): " << c.object_count() << " commutative monoids, "
      << c.arrow_count() << " morphisms\n";
  for (ObjIndex i = 0; i < c.object_count(); ++i) {
    const auto& m = cm.monoids.objects[i];
    out << "  " << c.objects()[i] << ": unit " << nm.multicat->describe(m.unit) << ", mult "
        << nm.multicat->describe(m.mult) << '\n';
  }
  Reports r{true, out};
  r.add(check_preadditive(cm.category));
  return r.code();
}

int derive_grothendieck(const std::string& ref, const Options& o, std::ostream& out) {
  Reports r{true, out};
  const bool is_module = builtin_module(ref) || in_file(ref, [&] {
                           return document_kind(read_json_file(ref)) == Kind::module;
                         });
  if (is_module) {
    const ModuleFibration mf = module_fibration(load_module(ref, o.config));
    const auto& total = *mf.groth.total;
    out << total.name() << " over " << mf.base.multicat->name() << ": " << total.object_count()
        << " objects\n";
    const CheckBounds sb = sampled_bounds(total, o);
    r.add(check_multicategory(total, sb));
    r.add(check_functor(mf.groth.proj, sb));
    r.add(check_unique_lifts(total, sb));
    r.add(check_fp(mf.total, sb, o.bijections_only));
    r.add(check_fp_functor(mf.proj, sb));
    return r.code();
  }
  const IndexedMonoid im = in_file(ref, [&] {
    return indexed_monoid_from_json(load_doc(ref, Kind::indexed_monoid));
  });
  FiberBounds fb;
  fb.seed = o.config.seed;
  LawReport laws = check_indexed_monoid(im, fb);
  r.add(laws);
  if (!laws.passed()) return 1;
  const Grothendieck g = grothendieck(im);
  out << g.total->name() << " over " << g.proj.target->name() << ": " << g.total->object_count()
      << " objects\n";
  CheckBounds sb = sampled_bounds(*g.total, o);
  if (im.posetal() && sb.arity_bound > 2) {
    sb.arity_bound = 2;
    out << "arity bound lowered to 2 for posetal fibers\n";
  }
  r.add(check_multicategory(*g.total, sb));
  r.add(check_functor(g.proj, sb));
  if (im.posetal()) {
    out << "unique lift: skipped (posetal fibers)\n";
  } else {
    r.add(check_unique_lifts(*g.total, sb));
  }
  return r.code();
}

int run_derive(const std::string& construction, const std::string& arg, const Options& o,
               std::ostream& out) {
  const CheckBounds b = o.config.bounds();
  Reports r{true, out};
  if (construction == "cocone") {
    auto c = std::make_shared<const FinCategory>(load_category(arg));
    auto m = discrete_cocone(c);
    const bool ok = print_hom_sizes(*m, o, out, [&](const ObjList& dom, ObjId x) {
      std::vector<std::size_t> fs;
      for (ObjId d : dom) fs.push_back(c->hom(d.value, x.value).size());
      return fs;
    });
    out << "hom-set products: " << (ok ? "match" : "MISMATCH") << '\n';
    r.passed = ok;
    r.add(check_multicategory(*m, b));
    return r.code();
  }
  if (construction == "linear") {
    auto c = std::make_shared<const FinCategory>(load_category(arg));
    auto m = linear(c);
    print_hom_sizes(*m, o, out);
    r.add(check_multicategory(*m, b));
    return r.code();
  }
  if (construction == "setx") {
    auto s = rep_of_finsets(parse_set_sizes(arg, o.config));
    const bool ok = print_hom_sizes(*s, o, out, [&](const ObjList& dom, ObjId x) {
      std::size_t points = 1;
      for (ObjId d : dom) points *= s->set(d).size();
      return std::vector<std::size_t>(points, s->set(x).size());
    });
    r.passed = ok;
    r.add(check_multicategory(*s, b));
    r.add(check_fp(fp_of_finsets(s), b, o.bijections_only));
    return r.code();
  }
  if (construction == "mon") return derive_mon(arg, o, out);
  if (construction == "cmon") return derive_cmon(arg, o, out);
  if (construction == "grothendieck") return derive_grothendieck(arg, o, out);
  if (construction == "fp-preadditive") {
    const PreadditiveFinCat c = load_preadditive(arg, o.config);
    r.add(check_preadditive(c));
    const CartesianMulticategory cm = fp_of_preadditive(c);
    print_hom_sizes(*cm.multicat, o, out);
    r.add(check_fp(cm, b, o.bijections_only));
    return r.code();
  }
  throw SchemaError("/construction", "unknown construction '" + construction + "'");
}

std::string witness_text(const std::vector<ArrowId>& w, const std::function<std::string(ArrowId)>& name) {
  std::string s = "⟨";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + name(w[i]);
  return s + "⟩";
}

struct QueryArgs {
  std::string module;
  std::string elems;
  std::string target;
  std::string pieces;
  std::string multicat;
  std::string dom;
  std::string cod;
  std::string f;
  std::string args;
};

std::vector<std::uint64_t> module_elements(const RigModule& m, const std::string& text,
                                           const char* where) {
  std::vector<std::uint64_t> out;
  for (const auto& e : split_list(text)) {
    auto x = m.carrier.find(e);
    if (!x) throw SchemaError(where, "unknown element '" + e + "'");
    out.push_back(*x);
  }
  return out;
}

std::vector<std::uint64_t> figures(const Torus& t, const std::string& text, const char* where) {
  std::vector<std::uint64_t> out;
  for (const auto& e : split_list(text)) {
    auto x = t.parse_figure(e);
    if (!x) throw SchemaError(where, "cannot parse figure '" + e + "'");
    out.push_back(*x);
  }
  return out;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw SchemaError(std::string("/") + (flag + 2), std::string(flag) + " is required");
}

void print_entailment(const Entailment& e, const std::function<std::string(ArrowId)>& name,
                      std::ostream& out) {
  out << (e.holds ? "true" : "false") << '\n';
  for (const auto& w : e.witnesses) out << "  " << witness_text(w, name) << '\n';
  if (e.truncated) out << "  (more witnesses not shown)\n";
}

int run_query(const std::string& kind, const QueryArgs& q, const Options& o, std::ostream& out,
              bool oracle) {
  if (kind == "span") {
    require(q.module, "--module");
    require(q.target, "--target");
    const RigModule m = load_module(q.module, o.config);
    const auto elems = module_elements(m, q.elems, "/elems");
    const auto target = module_elements(m, q.target, "/target");
    if (target.size() != 1) throw SchemaError("/target", "expected one element");
    if (oracle) {
      out << (oracle_entails(QueryKind::span, elems, target[0], &m) ? "true" : "false") << '\n';
      return 0;
    }
    const ModuleFibration mf = module_fibration(m);
    print_entailment(span_query(mf, elems, target[0], o.witness_limit),
                     [&](ArrowId a) { return m.rig.carrier()[a]; }, out);
    return 0;
  }
  if (kind == "tangram" || kind == "cover") {
    require(q.target, "--target");
    const Torus t(o.config.grid_size);
    const auto pieces = figures(t, q.pieces, "/pieces");
    const auto target = figures(t, q.target, "/target");
    if (target.size() != 1) throw SchemaError("/target", "expected one figure");
    const QueryKind qk = kind == "tangram" ? QueryKind::tangram : QueryKind::cover;
    if (oracle) {
      out << (oracle_entails(qk, pieces, target[0], nullptr, t.n()) ? "true" : "false") << '\n';
      return 0;
    }
    const Entailment e = qk == QueryKind::tangram ? tangram_entails(t, pieces, target[0], o.witness_limit)
                                                  : cover_entails(t, pieces, target[0], o.witness_limit);
    print_entailment(e, [&](ArrowId g) { return t.group()->arrow(g).name; }, out);
    return 0;
  }
  if (oracle) throw SchemaError("/kind", "oracles answer span, tangram and cover queries");
  if (kind == "hom") {
    require(q.multicat, "--multicat");
    require(q.cod, "--cod");
    const NamedMulticategory nm = load_multicategory(q.multicat, o.config);
    const Multicategory& m = *nm.multicat;
    const ObjList dom = m.parse_object_list(q.dom);
    const auto cod = m.find_object(q.cod);
    if (!cod) throw SchemaError("/cod", "unknown object '" + q.cod + "'");
    const auto arrows = m.hom(dom, *cod, o.config.hom_cap);
    out << "|hom(" << m.describe_list(dom) << "; " << m.object_name(*cod) << ")| = " << arrows.size()
        << '\n';
    for (const auto& f : arrows) out << "  " << m.describe(f) << '\n';
    return 0;
  }
  if (kind == "compose") {
    require(q.multicat, "--multicat");
    require(q.f, "--f");
    const NamedMulticategory nm = load_multicategory(q.multicat, o.config);
    const Multicategory& m = *nm.multicat;
    const MultiArrow f = m.parse_arrow(q.f, o.config.hom_cap);
    std::vector<MultiArrow> args;
    for (const auto& a : split_list(q.args)) args.push_back(m.parse_arrow(a, o.config.hom_cap));
    out << m.describe(m.compose(f, args)) << '\n';
    return 0;
  }
  throw SchemaError("/kind", "unknown query '" + kind + "'");
}

void add_query_options(CLI::App* sub, std::string& kind, QueryArgs& q) {
  sub->add_option("kind", kind, "span, tangram, cover, hom or compose")->required();
  sub->add_option("--module", q.module, "module file or built-in name");
  sub->add_option("--elems", q.elems, "elements, separated by ';'");
  sub->add_option("--target", q.target, "target element or figure");
  sub->add_option("--pieces", q.pieces, "figures, separated by ';'");
  sub->add_option("--multicat", q.multicat, "construction:argument");
  sub->add_option("--dom", q.dom, "domain list, e.g. \"X,Y\"");
  sub->add_option("--cod", q.cod, "codomain object");
  sub->add_option("--f", q.f, "arrow \"dom -> cod : label\"");
  sub->add_option("--args", q.args, "arrows, separated by ';'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite multicategory workbench", "multikat"};
  app.require_subcommand(1);

  Options o;
  std::optional<std::size_t> arity_bound, hom_cap, carrier_cap, grid;
  std::optional<std::uint64_t> seed;
  app.add_option("--arity-bound", arity_bound, "largest arity checked");
  app.add_option("--hom-cap", hom_cap, "largest hom-set enumerated");
  app.add_option("--carrier-cap", carrier_cap, "largest carrier accepted");
  app.add_option("--grid", grid, "torus size for tangram and cover queries");
  app.add_option("--seed", seed, "seed for sampled checks");
  app.add_option("--witness-limit", o.witness_limit, "witnesses printed per query");
  app.add_flag("--bijections-only", o.bijections_only, "restrict index maps to bijections");

  std::string check_file, check_kind;
  auto* check = app.add_subcommand("check", "check the laws of a structure file");
  check->add_option("file", check_file)->required();
  check->add_option("--kind", check_kind, "expected kind");

  std::string construction, derive_arg;
  auto* derive = app.add_subcommand("derive", "build a construction and check its laws");
  derive->add_option("construction", construction,
                     "cocone, linear, setx, mon, cmon, grothendieck or fp-preadditive")
      ->required();
  derive->add_option("input", derive_arg, "file, built-in name, set sizes or construction:argument")
      ->required();

  std::string query_kind, oracle_kind;
  QueryArgs qa, oa;
  auto* query = app.add_subcommand("query", "answer an entailment or hom query");
  add_query_options(query, query_kind, qa);
  auto* oracle = app.add_subcommand("oracle", "answer an entailment query by brute force");
  add_query_options(oracle, oracle_kind, oa);

  for (auto* sub : {check, derive, query, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    o.config = config_from_env();
    if (arity_bound) o.config.arity_bound = *arity_bound;
    if (hom_cap) o.config.hom_cap = *hom_cap;
    if (carrier_cap) o.config.carrier_cap = *carrier_cap;
    if (grid) o.config.grid_size = *grid;
    if (seed) o.config.seed = *seed;
    o.config.validate();

    if (*check) return run_check(check_file, check_kind, o, out);
    if (*derive) return run_derive(construction, derive_arg, o, out);
    if (*query) return run_query(query_kind, qa, o, out, false);
    if (*oracle) return run_query(oracle_kind, oa, o, out, true);
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return 2;
  } catch (const MonoidLawFailure& e) {
    err << "law failure: " << e.what() << '\n';
    return 1;
  } catch (const ModuleLawFailure& e) {
    err << "law failure: " << e.what() << '\n';
    return 1;
  } catch (const FpLawFailure& e) {
    err << "law failure: " << e.what() << '\n';
    return 1;
  } catch (const EnumerationOverflow& e) {
    err << "too large: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace multikat
