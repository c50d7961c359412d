#pragma once

// JSON interchange. Elements, objects and arrows are referred to by name;
// operation tables are arrays of triples. Parsers throw SchemaError with a
// JSON pointer to the offending value.

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "multikat/base.hpp"
#include "multikat/cartesian.hpp"
#include "multikat/fibrations.hpp"
#include "multikat/kernel.hpp"

namespace multikat {

using Json = nlohmann::ordered_json;

enum class Kind {
  category,
  monoid,
  rig,
  preadditive,
  module,
  indexed_monoid,
  multicat_tab,
  fp_functor,
};

std::optional<Kind> parse_kind(std::string_view name);
std::string kind_name(Kind k);

/// Reads and parses a file. Malformed JSON is a SchemaError whose location
/// names the line and column.
Json read_json_file(const std::string& path);
/// The "kind" field of a document.
Kind document_kind(const Json& doc);

/// {"objects": [...], "arrows": [{"name","dom","cod"}], "identities": {X: id},
///  "composition": [[g, f, g∘f], ...]}. Composites with identities may be omitted.
FinCategory category_from_json(const Json& j, const std::string& where = "");
Json to_json(const FinCategory& c);

/// {"elements": [...], "unit": e, "table": [[a, b, a·b], ...]}.
FinMonoid monoid_from_json(const Json& j, const std::string& where = "");
Json to_json(const FinMonoid& m);

/// {"elements", "zero", "one", "add": triples, "mul": triples}.
FinRig rig_from_json(const Json& j, const std::string& where = "");
Json to_json(const FinRig& r);
/// A rig object, or the name of a built-in rig.
FinRig rig_ref_from_json(const Json& j, const std::string& where);
/// A category object, or the name of a built-in category.
FinCategory category_ref_from_json(const Json& j, const std::string& where);

/// {"category": {...}, "sum": [[f, g, f+g], ...], "zero": [[X, Y, 0_XY], ...]}.
PreadditiveFinCat preadditive_from_json(const Json& j, const std::string& where = "");
Json to_json(const PreadditiveFinCat& c);

/// {"rig", "elements", "zero", "add": triples, "scalar": [[α, x, ᾱx], ...]}.
RigModule module_from_json(const Json& j, const std::string& where = "");
Json to_json(const RigModule& m);

/// An fp-functor R_▶ → Set× by its generator images:
/// {"rig", "elements", "zero": F⟨⟩, "plus": F⟨1,1⟩ as triples,
///  "scalars": F⟨α⟩ as triples [α, x, y]}.
RigModule fp_functor_from_json(const Json& j, const std::string& where = "");
Json fp_functor_to_json(const RigModule& generators);

/// {"category", "fibers": {X: monoid (+ "order": [[a, b], ...] for a → b)},
///  "action": [[λ, a, λa], ...]}.
IndexedMonoid indexed_monoid_from_json(const Json& j, const std::string& where = "");
/// Fibers are tabulated; throws EnumerationOverflow above `cap` elements.
Json to_json(const IndexedMonoid& im, std::size_t cap = 4096);

/// {"objects", "arity_bound", "arrows": [{"name","dom":[...],"cod"}],
///  "identities": {X: id}, "composition": [{"f","args":[...],"result"}]}.
std::shared_ptr<const TabulatedMulticategory> tabulated_from_json(const Json& j,
                                                                  const std::string& where = "");
Json to_json(const TabulatedMulticategory& m);

// Built-in instances by name: rigs bool, z2, tropicalK (1 ≤ K ≤ 15);
// categories terminal, two-object, walking-pair; preadditive bool-matrices;
// module bool2.
std::optional<FinRig> builtin_rig(std::string_view name);
std::optional<FinCategory> builtin_category(std::string_view name);
std::optional<PreadditiveFinCat> builtin_preadditive(std::string_view name);
std::optional<RigModule> builtin_module(std::string_view name);

}  // namespace multikat
