#include "multikat/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "multikat/errors.hpp"

namespace multikat {

namespace {

std::string at(const std::string& where, std::string_view key) {
  return where + "/" + std::string(key);
}

std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& expect_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where.empty() ? "/" : where, "expected an object");
  return j;
}

const Json& expect_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where.empty() ? "/" : where, "expected an array");
  return j;
}

const Json& field(const Json& j, const std::string& where, const char* key) {
  expect_object(j, where);
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(where, key), "missing field");
  return *it;
}

const Json* optional_field(const Json& j, const std::string& where, const char* key) {
  expect_object(j, where);
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where, "expected a string");
  return j.get<std::string>();
}

std::string name_or(const Json& j, const std::string& where, std::string fallback) {
  const Json* n = optional_field(j, where, "name");
  return n ? text(*n, at(where, "name")) : std::move(fallback);
}

std::size_t positive(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0)
    throw SchemaError(where, "expected a positive integer");
  return j.get<std::size_t>();
}

/// An array of distinct names with a reverse index.
struct Names {
  std::vector<std::string> list;
  std::map<std::string, std::size_t, std::less<>> index;

  std::size_t size() const { return list.size(); }

  std::size_t lookup(const Json& j, const std::string& where, const char* what) const {
    const std::string s = text(j, where);
    auto it = index.find(s);
    if (it == index.end()) throw SchemaError(where, std::string("unknown ") + what + " '" + s + "'");
    return it->second;
  }
};

Names names_of(std::vector<std::string> list, const std::string& where) {
  Names n;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!n.index.emplace(list[i], i).second)
      throw SchemaError(at(where, i), "duplicate name '" + list[i] + "'");
  }
  n.list = std::move(list);
  return n;
}

Names read_names(const Json& j, const std::string& where, bool nonempty = true) {
  expect_array(j, where);
  if (nonempty && j.empty()) throw SchemaError(where, "must not be empty");
  std::vector<std::string> list;
  for (std::size_t i = 0; i < j.size(); ++i) list.push_back(text(j[i], at(where, i)));
  return names_of(std::move(list), where);
}

const Json& tuple(const Json& j, const std::string& where, std::size_t n) {
  if (!j.is_array() || j.size() != n)
    throw SchemaError(where, "expected an array of " + std::to_string(n) + " names");
  return j;
}

/// A total binary operation on `elems` from triples [a, b, a·b].
std::vector<std::size_t> read_operation(const Json& j, const std::string& where,
                                        const Names& elems) {
  expect_array(j, where);
  const std::size_t n = elems.size();
  std::vector<std::size_t> table(n * n, SIZE_MAX);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = at(where, i);
    const Json& t = tuple(j[i], w, 3);
    const std::size_t a = elems.lookup(t[0], at(w, 0), "element");
    const std::size_t b = elems.lookup(t[1], at(w, 1), "element");
    const std::size_t c = elems.lookup(t[2], at(w, 2), "element");
    if (table[a * n + b] != SIZE_MAX) throw SchemaError(w, "duplicate entry");
    table[a * n + b] = c;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a * n + b] == SIZE_MAX)
        throw SchemaError(where, "no entry for (" + elems.list[a] + ", " + elems.list[b] + ")");
    }
  }
  return table;
}

Json operation_json(const std::vector<std::string>& elems, const std::vector<std::size_t>& table) {
  Json out = Json::array();
  const std::size_t n = elems.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out.push_back({elems[a], elems[b], elems[table[a * n + b]]});
  }
  return out;
}

/// Rethrows constructor errors that carry no location under `where`.
template <typename F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const SchemaError& e) {
    if (e.where().empty()) throw SchemaError(where.empty() ? "/" : where, e.what());
    if (e.where().front() == '/') throw SchemaError(where + e.where(), e.what());
    throw;
  }
}

FinMonoid monoid_body(const Json& j, const std::string& where, std::string name) {
  const Names elems = read_names(field(j, where, "elements"), at(where, "elements"));
  FinMonoid m;
  m.name = std::move(name);
  m.unit = elems.lookup(field(j, where, "unit"), at(where, "unit"), "element");
  m.table = read_operation(field(j, where, "table"), at(where, "table"), elems);
  m.carrier = elems.list;
  return m;
}

Json monoid_body_json(const FinMonoid& m) {
  Json out = Json::object();
  out["elements"] = m.carrier;
  out["unit"] = m.carrier.at(m.unit);
  out["table"] = operation_json(m.carrier, m.table);
  return out;
}

Json category_body_json(const FinCategory& c) {
  Json out = Json::object();
  out["name"] = c.name();
  out["objects"] = c.objects();
  Json arrows = Json::array();
  for (const auto& a : c.arrows())
    arrows.push_back({{"name", a.name}, {"dom", c.objects()[a.dom]}, {"cod", c.objects()[a.cod]}});
  out["arrows"] = std::move(arrows);
  Json ids = Json::object();
  for (ObjIndex x = 0; x < c.object_count(); ++x) ids[c.objects()[x]] = c.arrow(c.identity(x)).name;
  out["identities"] = std::move(ids);
  Json comp = Json::array();
  const std::size_t n = c.arrow_count();
  std::vector<bool> is_id(n, false);
  for (ArrowId i : c.identities()) is_id[i] = true;
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId f = 0; f < n; ++f) {
      if (c.cod(f) != c.dom(g) || is_id[g] || is_id[f]) continue;
      comp.push_back({c.arrow(g).name, c.arrow(f).name, c.arrow(c.compose(g, f)).name});
    }
  }
  out["composition"] = std::move(comp);
  return out;
}

std::optional<std::size_t> parse_suffix(std::string_view s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return std::nullopt;
  s.remove_prefix(prefix.size());
  std::size_t k = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return k;
}

}  // namespace

std::optional<Kind> parse_kind(std::string_view name) {
  static const std::pair<std::string_view, Kind> kinds[] = {
      {"category", Kind::category},       {"monoid", Kind::monoid},
      {"rig", Kind::rig},                 {"preadditive", Kind::preadditive},
      {"module", Kind::module},           {"indexed-monoid", Kind::indexed_monoid},
      {"multicat-tab", Kind::multicat_tab}, {"fp-functor", Kind::fp_functor},
  };
  for (const auto& [n, k] : kinds) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::category: return "category";
    case Kind::monoid: return "monoid";
    case Kind::rig: return "rig";
    case Kind::preadditive: return "preadditive";
    case Kind::module: return "module";
    case Kind::indexed_monoid: return "indexed-monoid";
    case Kind::multicat_tab: return "multicat-tab";
    case Kind::fp_functor: return "fp-functor";
  }
  return "?";
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw SchemaError(path, std::string("malformed JSON: ") + e.what());
  }
}

Kind document_kind(const Json& doc) {
  const std::string k = text(field(doc, "", "kind"), "/kind");
  auto kind = parse_kind(k);
  if (!kind) throw SchemaError("/kind", "unknown kind '" + k + "'");
  return *kind;
}

// ---- categories -------------------------------------------------------------

FinCategory category_from_json(const Json& j, const std::string& where) {
  const Names objects = read_names(field(j, where, "objects"), at(where, "objects"));
  const std::string aw = at(where, "arrows");
  const Json& ja = expect_array(field(j, where, "arrows"), aw);
  std::vector<FinCategory::Arrow> arrows;
  std::vector<std::string> arrow_names;
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string w = at(aw, i);
    arrows.push_back({text(field(ja[i], w, "name"), at(w, "name")),
                      objects.lookup(field(ja[i], w, "dom"), at(w, "dom"), "object"),
                      objects.lookup(field(ja[i], w, "cod"), at(w, "cod"), "object")});
    arrow_names.push_back(arrows.back().name);
  }
  const Names names = names_of(arrow_names, aw);

  const std::string iw = at(where, "identities");
  const Json& ji = expect_object(field(j, where, "identities"), iw);
  std::vector<ArrowId> ids(objects.size(), SIZE_MAX);
  for (auto it = ji.begin(); it != ji.end(); ++it) {
    const std::string w = at(iw, it.key());
    auto x = objects.index.find(it.key());
    if (x == objects.index.end()) throw SchemaError(w, "unknown object '" + it.key() + "'");
    const ArrowId a = names.lookup(it.value(), w, "arrow");
    if (arrows[a].dom != x->second || arrows[a].cod != x->second)
      throw SchemaError(w, "not an endo-arrow of " + it.key());
    ids[x->second] = a;
  }
  for (std::size_t x = 0; x < ids.size(); ++x) {
    if (ids[x] == SIZE_MAX) throw SchemaError(iw, "no identity for " + objects.list[x]);
  }

  const std::size_t n = arrows.size();
  std::vector<std::int64_t> comp(n * n, FinCategory::kUndefined);
  const std::string cw = at(where, "composition");
  const Json& jc = expect_array(field(j, where, "composition"), cw);
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string w = at(cw, i);
    const Json& t = tuple(jc[i], w, 3);
    const ArrowId g = names.lookup(t[0], at(w, 0), "arrow");
    const ArrowId f = names.lookup(t[1], at(w, 1), "arrow");
    const ArrowId h = names.lookup(t[2], at(w, 2), "arrow");
    if (arrows[f].cod != arrows[g].dom)
      throw SchemaError(w, arrows[g].name + "∘" + arrows[f].name + " is not composable");
    if (comp[g * n + f] != FinCategory::kUndefined) throw SchemaError(w, "duplicate entry");
    comp[g * n + f] = static_cast<std::int64_t>(h);
  }
  for (ArrowId a = 0; a < n; ++a) {
    auto& left = comp[ids[arrows[a].cod] * n + a];
    if (left == FinCategory::kUndefined) left = static_cast<std::int64_t>(a);
    auto& right = comp[a * n + ids[arrows[a].dom]];
    if (right == FinCategory::kUndefined) right = static_cast<std::int64_t>(a);
  }
  for (ArrowId g = 0; g < n; ++g) {
    for (ArrowId f = 0; f < n; ++f) {
      if (arrows[f].cod == arrows[g].dom && comp[g * n + f] == FinCategory::kUndefined)
        throw SchemaError(cw, "missing composite " + arrows[g].name + "∘" + arrows[f].name);
    }
  }
  return located(where, [&] {
    return FinCategory(name_or(j, where, "C"), objects.list, arrows, ids, comp);
  });
}

Json to_json(const FinCategory& c) {
  Json out = {{"kind", "category"}};
  out.update(category_body_json(c));
  return out;
}

FinCategory category_ref_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    auto c = builtin_category(j.get<std::string>());
    if (!c) throw SchemaError(where, "unknown built-in category '" + j.get<std::string>() + "'");
    return *c;
  }
  return category_from_json(j, where);
}

// ---- monoids and rigs -------------------------------------------------------

FinMonoid monoid_from_json(const Json& j, const std::string& where) {
  return monoid_body(j, where, name_or(j, where, "M"));
}

Json to_json(const FinMonoid& m) {
  Json out = {{"kind", "monoid"}, {"name", m.name}};
  out.update(monoid_body_json(m));
  return out;
}

FinRig rig_from_json(const Json& j, const std::string& where) {
  const Names elems = read_names(field(j, where, "elements"), at(where, "elements"));
  FinRig r;
  r.name = name_or(j, where, "R");
  r.add = CommMonoid{r.name + "/add", elems.list,
                     read_operation(field(j, where, "add"), at(where, "add"), elems),
                     elems.lookup(field(j, where, "zero"), at(where, "zero"), "element")};
  r.mul = FinMonoid{r.name + "/mul", elems.list,
                    read_operation(field(j, where, "mul"), at(where, "mul"), elems),
                    elems.lookup(field(j, where, "one"), at(where, "one"), "element")};
  return r;
}

Json to_json(const FinRig& r) {
  return {{"kind", "rig"},
          {"name", r.name},
          {"elements", r.carrier()},
          {"zero", r.carrier().at(r.zero())},
          {"one", r.carrier().at(r.one())},
          {"add", operation_json(r.carrier(), r.add.table)},
          {"mul", operation_json(r.carrier(), r.mul.table)}};
}

FinRig rig_ref_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    auto r = builtin_rig(j.get<std::string>());
    if (!r) throw SchemaError(where, "unknown built-in rig '" + j.get<std::string>() + "'");
    return *r;
  }
  return rig_from_json(j, where);
}

// ---- preadditive categories -------------------------------------------------

PreadditiveFinCat preadditive_from_json(const Json& j, const std::string& where) {
  const std::string catw = at(where, "category");
  auto base = std::make_shared<const FinCategory>(category_ref_from_json(field(j, where, "category"), catw));
  std::vector<std::string> arrow_names;
  for (const auto& a : base->arrows()) arrow_names.push_back(a.name);
  const Names arrows = names_of(arrow_names, at(catw, "arrows"));
  const Names objects = names_of(base->objects(), at(catw, "objects"));
  const std::size_t n = base->arrow_count();
  const std::size_t k = base->object_count();

  PreadditiveFinCat c;
  c.base = base;
  c.sum.assign(n * n, FinCategory::kUndefined);
  const std::string sw = at(where, "sum");
  const Json& js = expect_array(field(j, where, "sum"), sw);
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string w = at(sw, i);
    const Json& t = tuple(js[i], w, 3);
    const ArrowId f = arrows.lookup(t[0], at(w, 0), "arrow");
    const ArrowId g = arrows.lookup(t[1], at(w, 1), "arrow");
    const ArrowId h = arrows.lookup(t[2], at(w, 2), "arrow");
    if (base->dom(f) != base->dom(g) || base->cod(f) != base->cod(g))
      throw SchemaError(w, "summands are not parallel");
    if (base->dom(h) != base->dom(f) || base->cod(h) != base->cod(f))
      throw SchemaError(w, "sum is not parallel to its summands");
    if (c.sum[f * n + g] != FinCategory::kUndefined) throw SchemaError(w, "duplicate entry");
    c.sum[f * n + g] = static_cast<std::int64_t>(h);
  }
  for (ArrowId f = 0; f < n; ++f) {
    for (ArrowId g = 0; g < n; ++g) {
      if (base->dom(f) == base->dom(g) && base->cod(f) == base->cod(g) &&
          c.sum[f * n + g] == FinCategory::kUndefined)
        throw SchemaError(sw, "no entry for (" + arrow_names[f] + ", " + arrow_names[g] + ")");
    }
  }

  c.zero.assign(k * k, SIZE_MAX);
  const std::string zw = at(where, "zero");
  const Json& jz = expect_array(field(j, where, "zero"), zw);
  for (std::size_t i = 0; i < jz.size(); ++i) {
    const std::string w = at(zw, i);
    const Json& t = tuple(jz[i], w, 3);
    const ObjIndex x = objects.lookup(t[0], at(w, 0), "object");
    const ObjIndex y = objects.lookup(t[1], at(w, 1), "object");
    const ArrowId z = arrows.lookup(t[2], at(w, 2), "arrow");
    if (base->dom(z) != x || base->cod(z) != y) throw SchemaError(at(w, 2), "zero arrow is mistyped");
    if (c.zero[x * k + y] != SIZE_MAX) throw SchemaError(w, "duplicate entry");
    c.zero[x * k + y] = z;
  }
  for (ObjIndex x = 0; x < k; ++x) {
    for (ObjIndex y = 0; y < k; ++y) {
      if (c.zero[x * k + y] == SIZE_MAX)
        throw SchemaError(zw, "no zero arrow " + objects.list[x] + " → " + objects.list[y]);
    }
  }
  return c;
}

Json to_json(const PreadditiveFinCat& c) {
  const FinCategory& b = *c.base;
  const std::size_t n = b.arrow_count();
  const std::size_t k = b.object_count();
  Json sum = Json::array();
  for (ArrowId f = 0; f < n; ++f) {
    for (ArrowId g = 0; g < n; ++g) {
      if (b.dom(f) != b.dom(g) || b.cod(f) != b.cod(g)) continue;
      sum.push_back({b.arrow(f).name, b.arrow(g).name, b.arrow(c.add(f, g)).name});
    }
  }
  Json zero = Json::array();
  for (ObjIndex x = 0; x < k; ++x) {
    for (ObjIndex y = 0; y < k; ++y)
      zero.push_back({b.objects()[x], b.objects()[y], b.arrow(c.zero_arrow(x, y)).name});
  }
  return {{"kind", "preadditive"},
          {"category", category_body_json(b)},
          {"sum", std::move(sum)},
          {"zero", std::move(zero)}};
}

// ---- modules and fp-functors ------------------------------------------------

namespace {

/// Triples [α, x, y] over rig × carrier → carrier, total.
std::vector<std::size_t> read_scalars(const Json& j, const std::string& where, const FinRig& r,
                                      const Names& elems) {
  const Names rig = names_of(r.carrier(), where);
  expect_array(j, where);
  const std::size_t n = elems.size();
  std::vector<std::size_t> table(r.size() * n, SIZE_MAX);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = at(where, i);
    const Json& t = tuple(j[i], w, 3);
    const std::size_t a = rig.lookup(t[0], at(w, 0), "scalar");
    const std::size_t x = elems.lookup(t[1], at(w, 1), "element");
    const std::size_t y = elems.lookup(t[2], at(w, 2), "element");
    if (table[a * n + x] != SIZE_MAX) throw SchemaError(w, "duplicate entry");
    table[a * n + x] = y;
  }
  for (std::size_t a = 0; a < r.size(); ++a) {
    for (std::size_t x = 0; x < n; ++x) {
      if (table[a * n + x] == SIZE_MAX)
        throw SchemaError(where, "no entry for (" + r.carrier()[a] + ", " + elems.list[x] + ")");
    }
  }
  return table;
}

Json scalars_json(const RigModule& m) {
  Json out = Json::array();
  for (std::size_t a = 0; a < m.rig.size(); ++a) {
    for (std::size_t x = 0; x < m.size(); ++x)
      out.push_back({m.rig.carrier()[a], m.carrier.carrier[x], m.carrier.carrier[m.act(a, x)]});
  }
  return out;
}

RigModule module_like(const Json& j, const std::string& where, const char* add_key,
                      const char* scalar_key) {
  RigModule m;
  m.rig = rig_ref_from_json(field(j, where, "rig"), at(where, "rig"));
  const Names elems = read_names(field(j, where, "elements"), at(where, "elements"));
  m.carrier = CommMonoid{name_or(j, where, "X"), elems.list,
                         read_operation(field(j, where, add_key), at(where, add_key), elems),
                         elems.lookup(field(j, where, "zero"), at(where, "zero"), "element")};
  m.scalar = read_scalars(field(j, where, scalar_key), at(where, scalar_key), m.rig, elems);
  return m;
}

}  // namespace

RigModule module_from_json(const Json& j, const std::string& where) {
  return module_like(j, where, "add", "scalar");
}

Json to_json(const RigModule& m) {
  Json rig = to_json(m.rig);
  rig.erase("kind");
  return {{"kind", "module"},
          {"name", m.carrier.name},
          {"rig", std::move(rig)},
          {"elements", m.carrier.carrier},
          {"zero", m.carrier.carrier.at(m.carrier.unit)},
          {"add", operation_json(m.carrier.carrier, m.carrier.table)},
          {"scalar", scalars_json(m)}};
}

RigModule fp_functor_from_json(const Json& j, const std::string& where) {
  return module_like(j, where, "plus", "scalars");
}

Json fp_functor_to_json(const RigModule& g) {
  Json rig = to_json(g.rig);
  rig.erase("kind");
  return {{"kind", "fp-functor"},
          {"name", g.carrier.name},
          {"rig", std::move(rig)},
          {"elements", g.carrier.carrier},
          {"zero", g.carrier.carrier.at(g.carrier.unit)},
          {"plus", operation_json(g.carrier.carrier, g.carrier.table)},
          {"scalars", scalars_json(g)}};
}

// ---- indexed monoids --------------------------------------------------------

IndexedMonoid indexed_monoid_from_json(const Json& j, const std::string& where) {
  const std::string catw = at(where, "category");
  auto base = std::make_shared<const FinCategory>(category_ref_from_json(field(j, where, "category"), catw));
  const std::size_t k = base->object_count();
  const std::size_t n = base->arrow_count();

  const std::string fw = at(where, "fibers");
  const Json& jf = expect_object(field(j, where, "fibers"), fw);
  std::vector<FinMonoid> tables(k);
  std::vector<Names> elems(k);
  std::vector<std::shared_ptr<std::vector<bool>>> orders(k);
  std::vector<bool> seen(k, false);
  for (auto it = jf.begin(); it != jf.end(); ++it) {
    const std::string w = at(fw, it.key());
    auto x = base->find_object(it.key());
    if (!x) throw SchemaError(w, "unknown object '" + it.key() + "'");
    seen[*x] = true;
    tables[*x] = monoid_body(it.value(), w, name_or(it.value(), w, it.key()));
    elems[*x] = names_of(tables[*x].carrier, at(w, "elements"));
    if (const Json* jo = optional_field(it.value(), w, "order")) {
      const std::string ow = at(w, "order");
      expect_array(*jo, ow);
      const std::size_t m = tables[*x].size();
      auto order = std::make_shared<std::vector<bool>>(m * m, false);
      for (std::size_t i = 0; i < jo->size(); ++i) {
        const Json& t = tuple((*jo)[i], at(ow, i), 2);
        const std::size_t a = elems[*x].lookup(t[0], at(at(ow, i), 0), "element");
        const std::size_t b = elems[*x].lookup(t[1], at(at(ow, i), 1), "element");
        (*order)[a * m + b] = true;
      }
      orders[*x] = std::move(order);
    }
  }
  for (ObjIndex x = 0; x < k; ++x) {
    if (!seen[x]) throw SchemaError(fw, "no fiber for " + base->objects()[x]);
    if (static_cast<bool>(orders[x]) != static_cast<bool>(orders[0]))
      throw SchemaError(fw, "either every fiber or none has an order");
  }

  // action[λ][a]
  std::vector<std::vector<std::size_t>> action(n);
  for (ArrowId a = 0; a < n; ++a) action[a].assign(tables[base->dom(a)].size(), SIZE_MAX);
  std::vector<std::string> arrow_names;
  for (const auto& a : base->arrows()) arrow_names.push_back(a.name);
  const Names arrows = names_of(arrow_names, at(catw, "arrows"));
  const std::string actw = at(where, "action");
  const Json& jact = expect_array(field(j, where, "action"), actw);
  for (std::size_t i = 0; i < jact.size(); ++i) {
    const std::string w = at(actw, i);
    const Json& t = tuple(jact[i], w, 3);
    const ArrowId l = arrows.lookup(t[0], at(w, 0), "arrow");
    const std::size_t a = elems[base->dom(l)].lookup(t[1], at(w, 1), "element");
    const std::size_t b = elems[base->cod(l)].lookup(t[2], at(w, 2), "element");
    if (action[l][a] != SIZE_MAX) throw SchemaError(w, "duplicate entry");
    action[l][a] = b;
  }
  for (ObjIndex x = 0; x < k; ++x) {
    auto& row = action[base->identity(x)];
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (row[a] == SIZE_MAX) row[a] = a;
    }
  }
  for (ArrowId l = 0; l < n; ++l) {
    for (std::size_t a = 0; a < action[l].size(); ++a) {
      if (action[l][a] == SIZE_MAX)
        throw SchemaError(actw, "no entry for (" + arrow_names[l] + ", " +
                                    elems[base->dom(l)].list[a] + ")");
    }
  }

  IndexedMonoid im;
  im.name = name_or(j, where, "M");
  im.base = base;
  for (ObjIndex x = 0; x < k; ++x) {
    FiberMonoid f = fiber_of(tables[x]);
    if (orders[x]) {
      const std::size_t m = tables[x].size();
      f.leq = [order = orders[x], m](std::uint64_t a, std::uint64_t b) {
        return (*order)[a * m + b];
      };
    }
    im.fibers.push_back(std::move(f));
  }
  im.action = [action = std::move(action)](ArrowId l, std::uint64_t a) {
    return static_cast<std::uint64_t>(action[l][a]);
  };
  return im;
}

Json to_json(const IndexedMonoid& im, std::size_t cap) {
  const FinCategory& b = *im.base;
  Json fibers = Json::object();
  std::vector<FinMonoid> tables;
  for (ObjIndex x = 0; x < b.object_count(); ++x) {
    tables.push_back(tabulate_fiber(im.fibers[x], cap));
    Json f = {{"name", im.fibers[x].name}};
    f.update(monoid_body_json(tables.back()));
    if (im.fibers[x].posetal()) {
      Json order = Json::array();
      const auto& names = tables.back().carrier;
      for (std::size_t a = 0; a < names.size(); ++a) {
        for (std::size_t c = 0; c < names.size(); ++c) {
          if (im.fibers[x].leq(a, c)) order.push_back({names[a], names[c]});
        }
      }
      f["order"] = std::move(order);
    }
    fibers[b.objects()[x]] = std::move(f);
  }
  Json action = Json::array();
  for (ArrowId l = 0; l < b.arrow_count(); ++l) {
    const auto& from = tables[b.dom(l)].carrier;
    const auto& to = tables[b.cod(l)].carrier;
    for (std::size_t a = 0; a < from.size(); ++a)
      action.push_back({b.arrow(l).name, from[a], to.at(im.action(l, a))});
  }
  return {{"kind", "indexed-monoid"},
          {"name", im.name},
          {"category", category_body_json(b)},
          {"fibers", std::move(fibers)},
          {"action", std::move(action)}};
}

// ---- tabulated multicategories ----------------------------------------------

std::shared_ptr<const TabulatedMulticategory> tabulated_from_json(const Json& j,
                                                                  const std::string& where) {
  const Names objects = read_names(field(j, where, "objects"), at(where, "objects"));
  const std::size_t bound = positive(field(j, where, "arity_bound"), at(where, "arity_bound"));

  const std::string aw = at(where, "arrows");
  const Json& ja = expect_array(field(j, where, "arrows"), aw);
  std::vector<TabulatedMulticategory::Arrow> arrows;
  std::vector<std::string> arrow_names;
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string w = at(aw, i);
    TabulatedMulticategory::Arrow a;
    a.name = text(field(ja[i], w, "name"), at(w, "name"));
    const Json& jd = expect_array(field(ja[i], w, "dom"), at(w, "dom"));
    for (std::size_t s = 0; s < jd.size(); ++s)
      a.dom.push_back(ObjId{objects.lookup(jd[s], at(at(w, "dom"), s), "object")});
    a.cod = ObjId{objects.lookup(field(ja[i], w, "cod"), at(w, "cod"), "object")};
    arrow_names.push_back(a.name);
    arrows.push_back(std::move(a));
  }
  const Names names = names_of(arrow_names, aw);

  const std::string iw = at(where, "identities");
  const Json& ji = expect_object(field(j, where, "identities"), iw);
  std::vector<std::size_t> ids(objects.size(), SIZE_MAX);
  for (auto it = ji.begin(); it != ji.end(); ++it) {
    const std::string w = at(iw, it.key());
    auto x = objects.index.find(it.key());
    if (x == objects.index.end()) throw SchemaError(w, "unknown object '" + it.key() + "'");
    ids[x->second] = names.lookup(it.value(), w, "arrow");
  }
  for (std::size_t x = 0; x < ids.size(); ++x) {
    if (ids[x] == SIZE_MAX) throw SchemaError(iw, "no identity for " + objects.list[x]);
  }

  const std::string cw = at(where, "composition");
  const Json& jc = expect_array(field(j, where, "composition"), cw);
  std::vector<TabulatedMulticategory::Entry> entries;
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string w = at(cw, i);
    TabulatedMulticategory::Entry e;
    e.f = names.lookup(field(jc[i], w, "f"), at(w, "f"), "arrow");
    const Json& jargs = expect_array(field(jc[i], w, "args"), at(w, "args"));
    for (std::size_t s = 0; s < jargs.size(); ++s)
      e.args.push_back(names.lookup(jargs[s], at(at(w, "args"), s), "arrow"));
    e.result = names.lookup(field(jc[i], w, "result"), at(w, "result"), "arrow");
    entries.push_back(std::move(e));
  }
  return located(where, [&] {
    return std::make_shared<const TabulatedMulticategory>(name_or(j, where, "M"), objects.list,
                                                          bound, arrows, ids, entries);
  });
}

Json to_json(const TabulatedMulticategory& m) {
  const auto& objs = m.objects();
  Json arrows = Json::array();
  for (const auto& a : m.arrows()) {
    Json dom = Json::array();
    for (ObjId x : a.dom) dom.push_back(objs[x.value]);
    arrows.push_back({{"name", a.name}, {"dom", std::move(dom)}, {"cod", objs[a.cod.value]}});
  }
  Json ids = Json::object();
  for (std::size_t x = 0; x < objs.size(); ++x) ids[objs[x]] = m.arrows()[m.identities()[x]].name;
  Json comp = Json::array();
  for (const auto& e : m.entries()) {
    Json args = Json::array();
    for (std::size_t a : e.args) args.push_back(m.arrows()[a].name);
    comp.push_back({{"f", m.arrows()[e.f].name},
                    {"args", std::move(args)},
                    {"result", m.arrows()[e.result].name}});
  }
  return {{"kind", "multicat-tab"},
          {"name", m.name()},
          {"objects", objs},
          {"arity_bound", m.arity_bound()},
          {"arrows", std::move(arrows)},
          {"identities", std::move(ids)},
          {"composition", std::move(comp)}};
}

// ---- built-ins --------------------------------------------------------------

std::optional<FinRig> builtin_rig(std::string_view name) {
  if (name == "bool") return boolean_rig();
  if (name == "z2") return z2_ring();
  if (auto k = parse_suffix(name, "tropical"); k && *k >= 1 && *k <= 15)
    return truncated_tropical_rig(*k);
  return std::nullopt;
}

std::optional<FinCategory> builtin_category(std::string_view name) {
  if (name == "terminal") return terminal_category();
  if (name == "two-object") return two_object_category();
  if (name == "walking-pair") return walking_composable_pair();
  return std::nullopt;
}

std::optional<PreadditiveFinCat> builtin_preadditive(std::string_view name) {
  if (name == "bool-matrices") return boolean_matrix_category();
  if (auto r = builtin_rig(name)) return rig_to_preadditive(*r);
  return std::nullopt;
}

std::optional<RigModule> builtin_module(std::string_view name) {
  if (name == "bool2") return power_module(boolean_rig(), 2);
  if (auto r = builtin_rig(name)) return regular_module(*r);
  return std::nullopt;
}

}  // namespace multikat
