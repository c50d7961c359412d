#include "doctest.h"

#include <cstdlib>
#include <set>
#include <sstream>

#include "multikat/errors.hpp"
#include "multikat/fibrations.hpp"
#include "multikat/io.hpp"
#include "multikat/workbench.hpp"

using namespace multikat;

namespace {

const std::string kFixtures = MULTIKAT_FIXTURES;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "multikat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

std::string schema_where(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.where();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("kind names round-trip") {
  for (Kind k : {Kind::category, Kind::monoid, Kind::rig, Kind::preadditive, Kind::module,
                 Kind::indexed_monoid, Kind::multicat_tab, Kind::fp_functor}) {
    CHECK(parse_kind(kind_name(k)) == k);
  }
  CHECK_FALSE(parse_kind("sheaf"));
}

TEST_CASE("categories round-trip") {
  for (const FinCategory& c : {terminal_category(), two_object_category(), walking_composable_pair(),
                               product_category(two_object_category(), walking_composable_pair()),
                               *rig_category(truncated_tropical_rig(3))}) {
    const Json j = to_json(c);
    const FinCategory back = category_from_json(j);
    CHECK(back == c);
    CHECK(to_json(back) == j);
  }
}

TEST_CASE("category composites with identities may be omitted") {
  const FinCategory c = category_from_json(read_json_file(fixture("two_obj_cat.json")));
  CHECK(c.arrows() == two_object_category().arrows());
  CHECK(c.composition_table() == two_object_category().composition_table());
  CHECK(check_category(c).passed());
}

TEST_CASE("monoids, rigs and modules round-trip") {
  for (std::size_t n : {1, 2, 5}) {
    const FinMonoid m = cyclic_group(n);
    const FinMonoid back = monoid_from_json(to_json(m));
    CHECK(back == m);
  }
  for (const FinRig& r : {boolean_rig(), z2_ring(), truncated_tropical_rig(3)}) {
    const Json j = to_json(r);
    const FinRig back = rig_from_json(j);
    CHECK(back.add.table == r.add.table);
    CHECK(back.mul.table == r.mul.table);
    CHECK(back.carrier() == r.carrier());
    CHECK(back.zero() == r.zero());
    CHECK(back.one() == r.one());
    CHECK(to_json(back) == j);
  }
  for (const RigModule& m : {power_module(boolean_rig(), 2), regular_module(truncated_tropical_rig(3)),
                             power_module(z2_ring(), 3)}) {
    const Json j = to_json(m);
    const RigModule back = module_from_json(j);
    CHECK(back == m);
    CHECK(back.carrier.carrier == m.carrier.carrier);
    CHECK(to_json(back) == j);
    const RigModule gens = fp_functor_from_json(fp_functor_to_json(m));
    CHECK(gens == m);
  }
}

TEST_CASE("preadditive categories round-trip") {
  for (const PreadditiveFinCat& c : {boolean_matrix_category(), rig_to_preadditive(z2_ring())}) {
    const Json j = to_json(c);
    const PreadditiveFinCat back = preadditive_from_json(j);
    CHECK(*back.base == *c.base);
    CHECK(back.sum == c.sum);
    CHECK(back.zero == c.zero);
    CHECK(to_json(back) == j);
  }
}

TEST_CASE("indexed monoids round-trip") {
  auto t = std::make_shared<const Torus>(2);
  for (const IndexedMonoid& im :
       {figure_fibration(t), cover_fibration(t), module_indexed_monoid(power_module(boolean_rig(), 2)),
        indexed_monoid_from_json(read_json_file(fixture("swap_sets.json")))}) {
    const Json j = to_json(im);
    const IndexedMonoid back = indexed_monoid_from_json(j);
    CHECK(back.posetal() == im.posetal());
    CHECK(to_json(back) == j);
    CHECK(check_indexed_monoid(back).passed());
  }
}

TEST_CASE("tabulated multicategories round-trip") {
  for (const char* name : {"tab_commutative_monoid.json", "z3_linear.json"}) {
    const Json doc = read_json_file(fixture(name));
    auto m = tabulated_from_json(doc);
    const Json j = to_json(*m);
    CHECK(to_json(*tabulated_from_json(j)) == j);
    CHECK(j["composition"] == doc["composition"]);
  }
}

TEST_CASE("fixture files parse as their declared kind") {
  const std::pair<const char*, Kind> files[] = {
      {"bool.json", Kind::rig},
      {"tropical3.json", Kind::rig},
      {"z2.json", Kind::rig},
      {"z3_monoid.json", Kind::monoid},
      {"two_obj_cat.json", Kind::category},
      {"bool_preadditive.json", Kind::preadditive},
      {"bool2.json", Kind::module},
      {"bool_module.json", Kind::module},
      {"bool_fp.json", Kind::fp_functor},
      {"swap_sets.json", Kind::indexed_monoid},
      {"swap_cover.json", Kind::indexed_monoid},
      {"tab_commutative_monoid.json", Kind::multicat_tab},
      {"z3_linear.json", Kind::multicat_tab},
  };
  for (const auto& [name, kind] : files) {
    CAPTURE(name);
    CHECK(document_kind(read_json_file(fixture(name))) == kind);
  }
  CHECK(rig_from_json(read_json_file(fixture("bool.json"))).add.table == boolean_rig().add.table);
  CHECK(module_from_json(read_json_file(fixture("bool2.json"))) == power_module(boolean_rig(), 2));
}

TEST_CASE("schema errors carry JSON paths") {
  Json rig = to_json(boolean_rig());
  CHECK(schema_where([&] { rig_from_json(Json::array()); }) == "/");

  Json missing = rig;
  missing.erase("one");
  CHECK(schema_where([&] { rig_from_json(missing); }) == "/one");

  Json unknown = rig;
  unknown["mul"][3][2] = "2";
  CHECK(schema_where([&] { rig_from_json(unknown); }) == "/mul/3/2");

  Json duplicate = rig;
  duplicate["add"][1] = duplicate["add"][0];
  CHECK(schema_where([&] { rig_from_json(duplicate); }) == "/add/1");

  Json short_row = rig;
  short_row["add"][0] = Json::array({"0", "0"});
  CHECK(schema_where([&] { rig_from_json(short_row); }) == "/add/0");

  Json repeated = rig;
  repeated["elements"] = Json::array({"0", "0"});
  CHECK(schema_where([&] { rig_from_json(repeated); }) == "/elements/1");

  Json cat = to_json(two_object_category());
  cat["composition"].erase(0);
  CHECK(schema_where([&] { category_from_json(cat); }) == "/composition");

  Json bad_id = to_json(two_object_category());
  bad_id["identities"]["X"] = "f";
  CHECK(schema_where([&] { category_from_json(bad_id); }) == "/identities/X");

  Json module = to_json(power_module(boolean_rig(), 2));
  module["rig"] = "nonsense";
  CHECK(schema_where([&] { module_from_json(module); }) == "/rig");

  Json nested = to_json(boolean_matrix_category());
  nested["category"]["arrows"][0]["dom"] = "7";
  CHECK(schema_where([&] { preadditive_from_json(nested); }) == "/category/arrows/0/dom");

  Json tab = read_json_file(fixture("z3_linear.json"));
  tab["composition"].erase(3);
  CHECK(contains(schema_where([&] { tabulated_from_json(tab); }), "/composition"));

  CHECK(schema_where([&] { document_kind(Json{{"kind", "sheaf"}}); }) == "/kind");
  CHECK_THROWS_AS(read_json_file(fixture("malformed.json")), SchemaError);
}

TEST_CASE("built-in instances pass their checkers") {
  for (const char* name : {"bool", "z2", "tropical3"}) {
    auto r = builtin_rig(name);
    REQUIRE(r);
    CHECK(check_rig(*r).passed());
  }
  CHECK(builtin_rig("tropical3")->size() == 4);
  CHECK_FALSE(builtin_rig("tropical0"));
  CHECK_FALSE(builtin_rig("tropicalx"));
  for (const char* name : {"terminal", "two-object", "walking-pair"}) {
    auto c = builtin_category(name);
    REQUIRE(c);
    CHECK(check_category(*c).passed());
  }
  CHECK(check_preadditive(*builtin_preadditive("bool-matrices")).passed());
  CHECK(check_module(*builtin_module("bool2")).passed());
  const Torus t(4);
  CHECK(t.group_size() == 128);
  CHECK(check_category(*t.group()).passed());
}

TEST_CASE("configuration") {
  WorkbenchConfig c;
  CHECK(c.arity_bound == 3);
  CHECK(c.hom_cap == 10'000);
  CHECK(c.carrier_cap == 16);
  CHECK(c.grid_size == 4);

  const WorkbenchConfig f = config_from_json(read_json_file(fixture("config.json")));
  CHECK(f.arity_bound == 2);
  CHECK(f.grid_size == 3);
  CHECK(f.seed == 7);

  CHECK(config_from_json(Json{{"hom_cap", 5}}).arity_bound == 3);
  CHECK(schema_where([] { config_from_json(Json{{"grid_size", 9}}); }) == "/grid_size");
  CHECK(schema_where([] { config_from_json(Json{{"arity_bound", 0}}); }) == "/arity_bound");
  CHECK(schema_where([] { config_from_json(Json{{"colour", 1}}); }) == "/colour");
  CHECK(schema_where([] { config_from_json(Json{{"seed", "x"}}); }) == "/seed");
}

TEST_CASE("configuration from the environment, overridden by flags") {
  ::setenv("MULTIKAT_CONFIG", fixture("config.json").c_str(), 1);
  CHECK(config_from_env().grid_size == 3);
  // grid 3 from the file: the domino is not a translate on a 3x3 torus of the target below.
  const auto a = cli({"query", "tangram", "--pieces", "sq1;sq1", "--target", "{(0,0),(3,0)}"});
  CHECK(a.code == 2);
  const auto b = cli({"query", "tangram", "--grid", "4", "--pieces", "sq1;sq1", "--target",
                      "{(0,0),(3,0)}"});
  CHECK(b.code == 0);
  CHECK(contains(b.out, "true"));
  ::unsetenv("MULTIKAT_CONFIG");
  CHECK(config_from_env().grid_size == 4);
}

TEST_CASE("cli check exit codes") {
  CHECK(cli({"check", "--kind", "rig", fixture("bool.json")}).code == 0);
  CHECK(cli({"check", fixture("tropical3.json")}).code == 0);
  CHECK(cli({"check", fixture("two_obj_cat.json")}).code == 0);
  CHECK(cli({"check", fixture("swap_cover.json")}).code == 0);
  CHECK(cli({"check", fixture("tab_commutative_monoid.json")}).code == 0);
  CHECK(cli({"check", fixture("bool_fp.json")}).code == 0);

  const auto broken = cli({"check", "--kind", "rig", fixture("broken_distributivity.json")});
  CHECK(broken.code == 1);
  CHECK(contains(broken.out, "[left distributivity] 0·(0+1) = 0 but 0·0+0·1 = 1"));

  const auto malformed = cli({"check", fixture("malformed.json")});
  CHECK(malformed.code == 2);
  CHECK(contains(malformed.err, "line 4, column 8"));

  CHECK(cli({"check", "--kind", "monoid", fixture("bool.json")}).code == 2);
  CHECK(cli({"check", "--kind", "sheaf", fixture("bool.json")}).code == 2);
  CHECK(cli({"check", fixture("no-such-file.json")}).code == 2);
  CHECK(cli({"check", "--carrier-cap", "3", fixture("tropical3.json")}).code == 2);
  CHECK(cli({"check"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli derive") {
  const auto cocone = cli({"derive", "cocone", fixture("two_obj_cat.json")});
  CHECK(cocone.code == 0);
  CHECK(contains(cocone.out, "|hom(X,X; Y)| = 4 = 2×2"));
  CHECK(contains(cocone.out, "|hom(Y,X; X)| = 0 = 0×1"));
  CHECK(contains(cocone.out, "|hom(; X)| = 1 = 1"));
  CHECK(contains(cocone.out, "hom-set products: match"));

  const auto mon = cli({"derive", "mon", "cocone:" + fixture("two_obj_cat.json")});
  CHECK(mon.code == 0);
  CHECK(contains(mon.out, "2 monoids"));
  CHECK(contains(mon.out, "≅ two_obj_cat: yes"));

  const auto cmon = cli({"derive", "cmon", "setx:2"});
  CHECK(cmon.code == 0);
  CHECK(contains(cmon.out, "4 commutative monoids"));

  const auto groth = cli({"derive", "grothendieck", fixture("bool_module.json")});
  CHECK(groth.code == 0);
  CHECK(contains(groth.out, "unique lift B^ → B_▶: PASS"));

  const auto noncomm = cli({"derive", "fp-preadditive", fixture("noncommutative_sum.json")});
  CHECK(noncomm.code == 1);
  CHECK(contains(noncomm.out, "[act composition]"));
  CHECK(contains(noncomm.out, "[additive commutativity] 0+1 = 1 but 1+0 = 0"));

  CHECK(cli({"derive", "linear", "walking-pair"}).code == 0);
  CHECK(cli({"derive", "setx", "1,2", "--arity-bound", "2"}).code == 0);
  CHECK(cli({"derive", "setx", "two"}).code == 2);
  CHECK(cli({"derive", "pushout", "two-object"}).code == 2);
}

TEST_CASE("cli query") {
  const auto span = cli({"query", "span", "--module", fixture("bool2.json"), "--elems", "(1,0);(0,1)",
                         "--target", "(1,1)"});
  CHECK(span.code == 0);
  CHECK(span.out == "true\n  ⟨1,1⟩\n");

  const auto none = cli({"query", "span", "--module", "bool2", "--elems", "(1,0)", "--target", "(0,1)"});
  CHECK(none.out == "false\n");

  const auto tangram = cli({"query", "tangram", "--grid", "4", "--pieces", "sq1;sq1", "--target",
                            "domino", "--witness-limit", "2"});
  CHECK(tangram.code == 0);
  CHECK(tangram.out == "true\n  ⟨e,t(1,0)⟩\n  ⟨e,r1+t(1,0)⟩\n  (more witnesses not shown)\n");

  const auto hom = cli({"query", "hom", "--multicat", "cocone:" + fixture("two_obj_cat.json"), "--dom",
                        "X,Y", "--cod", "Y"});
  CHECK(hom.code == 0);
  CHECK(contains(hom.out, "|hom(X,Y; Y)| = 4"));
  CHECK(contains(hom.out, "X,Y -> Y : <g,s>"));

  const auto compose = cli({"query", "compose", "--multicat", "cocone:two-object", "--f",
                            "X,Y -> Y : <f,s>", "--args", "X -> X : <id_X>;Y -> Y : <s>"});
  CHECK(compose.code == 0);
  CHECK(compose.out == "X,Y -> Y : <f,id_Y>\n");

  CHECK(cli({"query", "span", "--module", "bool2", "--elems", "(2,0)", "--target", "(1,1)"}).code == 2);
  CHECK(cli({"query", "tangram", "--pieces", "blob", "--target", "sq1"}).code == 2);
  CHECK(cli({"query", "hom", "--multicat", "nothing", "--cod", "X"}).code == 2);
}

TEST_CASE("cli oracle") {
  const auto span = cli({"oracle", "span", "--module", "bool2", "--elems", "(1,0);(0,1)", "--target",
                         "(1,1)"});
  CHECK(span.code == 0);
  CHECK(span.out == "true\n");
  CHECK(cli({"oracle", "tangram", "--pieces", "", "--target", "sq1"}).out == "false\n");
  CHECK(cli({"oracle", "cover", "--grid", "3", "--pieces", "domino;domino", "--target", "sq1"}).out ==
        "true\n");
  CHECK(cli({"oracle", "hom", "--multicat", "cocone:two-object", "--cod", "X"}).code == 2);
}

TEST_CASE("oracle isometries are the torus group") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const Torus t(n);
    const auto isos = oracle_isometries(n);
    CHECK(isos.size() == t.group_size());
    std::set<std::vector<std::size_t>> a(isos.begin(), isos.end());
    std::set<std::vector<std::size_t>> b;
    for (ArrowId g = 0; g < t.group_size(); ++g) b.insert(t.perm(g));
    CHECK(a == b);
  }
  CHECK(oracle_isometries(3).size() == 72);
  CHECK(oracle_isometries(4).size() == 128);
}

TEST_CASE("oracle trivial cases") {
  const Torus t(3);
  for (Torus::Figure a : {Torus::Figure{1}, Torus::Figure{0b11}, t.full()}) {
    CHECK_FALSE(oracle_entails(QueryKind::tangram, {}, a, nullptr, 3));
    CHECK_FALSE(oracle_entails(QueryKind::cover, {}, a, nullptr, 3));
  }
  CHECK(oracle_entails(QueryKind::tangram, {}, 0, nullptr, 3));
  CHECK(oracle_entails(QueryKind::cover, {1}, 0, nullptr, 3));
  CHECK(oracle_tangram(3, {1, 1}, t.full()));
  CHECK(oracle_tangram(3, {0b11, 0b11}, 0b1111));
  CHECK_FALSE(oracle_tangram(3, {0b11, 0b11}, 0b111));
  CHECK_THROWS_AS(oracle_tangram(2, {1 << 5}, 1), SchemaError);
  const RigModule b2 = power_module(boolean_rig(), 2);
  CHECK_THROWS_AS(oracle_entails(QueryKind::span, {1}, 1), SchemaError);
  CHECK(oracle_entails(QueryKind::span, {}, 0, &b2));
  CHECK_FALSE(oracle_entails(QueryKind::span, {}, 1, &b2));
}

TEST_CASE("span oracle agrees with span_query on B²") {
  const RigModule m = power_module(boolean_rig(), 2);
  const ModuleFibration mf = module_fibration(m);
  std::size_t queries = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    std::vector<std::size_t> elems(n, 0);
    while (true) {
      const auto hit = oracle_span_targets(m, elems);
      for (std::size_t target = 0; target < m.size(); ++target) {
        const std::vector<std::uint64_t> es(elems.begin(), elems.end());
        CHECK(span_query(mf, es, target, 0).holds == hit[target]);
        CHECK(oracle_span(m, elems, target) == hit[target]);
        ++queries;
      }
      std::size_t i = 0;
      while (i < n && ++elems[i] == m.size()) elems[i++] = 0;
      if (i == n) break;
    }
  }
  CHECK(queries == 4 * (1 + 4 + 16 + 64));
}

TEST_CASE("figure oracles agree with the searches on the 2x2 torus") {
  const Torus t(2);
  const std::uint64_t full = t.full();
  for (std::uint64_t a = 0; a <= full; ++a) {
    for (std::uint64_t b = 0; b <= full; ++b) {
      const std::vector<std::uint64_t> pieces{a, b};
      const auto tangram = oracle_tangram_targets(2, pieces);
      const auto cover = oracle_cover_targets(2, pieces);
      for (std::uint64_t target = 0; target <= full; ++target) {
        CHECK(tangram_entails(t, pieces, target, 0).holds == tangram[target]);
        CHECK(cover_entails(t, pieces, target, 0).holds == cover[target]);
        CHECK(oracle_tangram(2, pieces, target) == tangram[target]);
        CHECK(oracle_cover(2, pieces, target) == cover[target]);
      }
    }
  }
}
