#pragma once

// Finite, fully tabulated algebraic inputs: categories, monoids, rigs,
// preadditive categories and finite sets, each with an exhaustive checker.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multikat/report.hpp"

namespace multikat {

using ArrowId = std::size_t;
using ObjIndex = std::size_t;

inline constexpr std::size_t kDefaultCarrierCap = 16;

/// A finite category given by explicit tables.
///
/// `composition[g * arrow_count() + f]` holds g∘f for every composable pair
/// (cod f = dom g). The constructor only validates the shape of the tables;
/// the category laws are checked by check_category() so that corrupted
/// fixtures can be represented and diagnosed.
class FinCategory {
 public:
  struct Arrow {
    std::string name;
    ObjIndex dom = 0;
    ObjIndex cod = 0;
    bool operator==(const Arrow&) const = default;
  };

  static constexpr std::int64_t kUndefined = -1;

  FinCategory(std::string name, std::vector<std::string> objects, std::vector<Arrow> arrows,
              std::vector<ArrowId> identities, std::vector<std::int64_t> composition);

  const std::string& name() const noexcept { return name_; }
  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  ObjIndex dom(ArrowId a) const { return arrows_.at(a).dom; }
  ObjIndex cod(ArrowId a) const { return arrows_.at(a).cod; }
  ArrowId identity(ObjIndex x) const { return identities_.at(x); }
  const std::vector<ArrowId>& identities() const noexcept { return identities_; }
  const std::vector<std::int64_t>& composition_table() const noexcept { return composition_; }

  /// g∘f. Throws ObjectMismatch when cod f ≠ dom g.
  ArrowId compose(ArrowId g, ArrowId f) const;

  /// Arrows x → y, in declaration order.
  const std::vector<ArrowId>& hom(ObjIndex x, ObjIndex y) const;

  std::optional<ObjIndex> find_object(std::string_view name) const;
  std::optional<ArrowId> find_arrow(std::string_view name) const;

  bool operator==(const FinCategory& other) const;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<ArrowId> identities_;
  std::vector<std::int64_t> composition_;
  std::vector<std::vector<ArrowId>> homs_;
};

/// Associativity, identity and typing laws over all composable pairs/triples.
LawReport check_category(const FinCategory& c);

/// A functor between finite categories, given by its object and arrow maps.
struct FinFunctor {
  std::shared_ptr<const FinCategory> source;
  std::shared_ptr<const FinCategory> target;
  std::vector<ObjIndex> on_objects;
  std::vector<ArrowId> on_arrows;
};

LawReport check_fin_functor(const FinFunctor& f);

FinFunctor identity_functor(std::shared_ptr<const FinCategory> c);

/// True iff `f` is a functor that is bijective on objects and on arrows.
bool is_isomorphism(const FinFunctor& f);

/// A finite monoid on the carrier {0..n-1}; `table[a * n + b]` = a·b.
/// Commutative monoids use the same representation (see check_comm_monoid).
struct FinMonoid {
  std::string name;
  std::vector<std::string> carrier;
  std::vector<std::size_t> table;
  std::size_t unit = 0;

  std::size_t size() const noexcept { return carrier.size(); }
  std::size_t op(std::size_t a, std::size_t b) const { return table[a * carrier.size() + b]; }
  std::optional<std::size_t> find(std::string_view element) const;
  bool operator==(const FinMonoid&) const = default;
};

using CommMonoid = FinMonoid;

LawReport check_monoid(const FinMonoid& m);
LawReport check_comm_monoid(const CommMonoid& m);

/// A rig: commutative additive monoid and multiplicative monoid on one
/// carrier, with distributivity and absorbing zero.
struct FinRig {
  std::string name;
  CommMonoid add;
  FinMonoid mul;

  std::size_t size() const noexcept { return add.size(); }
  const std::vector<std::string>& carrier() const noexcept { return add.carrier; }
  std::size_t zero() const noexcept { return add.unit; }
  std::size_t one() const noexcept { return mul.unit; }
  std::size_t plus(std::size_t a, std::size_t b) const { return add.op(a, b); }
  std::size_t times(std::size_t a, std::size_t b) const { return mul.op(a, b); }
  bool operator==(const FinRig&) const = default;
};

LawReport check_rig(const FinRig& r);

/// A category enriched in commutative monoids. Every hom-set is nonempty
/// (it holds its zero arrow); `sum[f * arrows + g]` is f+g for parallel f, g.
struct PreadditiveFinCat {
  std::shared_ptr<const FinCategory> base;
  std::vector<std::int64_t> sum;
  std::vector<ArrowId> zero;  // zero[x * objects + y] : x → y

  ArrowId add(ArrowId f, ArrowId g) const;
  ArrowId zero_arrow(ObjIndex x, ObjIndex y) const {
    return zero.at(x * base->object_count() + y);
  }
};

LawReport check_preadditive(const PreadditiveFinCat& c);

/// A rig seen as a one-object category: arrows are the rig elements,
/// composition is multiplication (λ∘μ = λ·μ), identity is 1.
std::shared_ptr<const FinCategory> rig_category(const FinRig& r);
PreadditiveFinCat rig_to_preadditive(const FinRig& r);
/// Inverse of rig_to_preadditive. Throws SchemaError unless `c` has one object.
FinRig preadditive_to_rig(const PreadditiveFinCat& c);

/// A finite set given by its distinct element names.
struct FinSetObj {
  std::string name;
  std::vector<std::string> elements;

  std::size_t size() const noexcept { return elements.size(); }
  bool operator==(const FinSetObj&) const = default;
};

/// Throws SchemaError if elements repeat.
void validate_finset(const FinSetObj& s);

// Built-in instances.

FinCategory terminal_category();
/// One-object category from a monoid.
FinCategory monoid_category_of(const FinMonoid& m);
/// Objects X, Y; s : Y → Y with s∘s = id; f, g : X → Y with s∘f = g, s∘g = f.
FinCategory two_object_category();
/// Objects 0 → 1 → 2 with f, g and g∘f.
FinCategory walking_composable_pair();
/// Product category.
FinCategory product_category(const FinCategory& c, const FinCategory& d);

FinMonoid cyclic_group(std::size_t n);
FinRig boolean_rig();
/// ({0..k}, min with unit k, saturating + with unit 0).
FinRig truncated_tropical_rig(std::size_t k);
FinRig z2_ring();
/// Objects {1, 2} with hom(m, n) = n×m Boolean matrices.
PreadditiveFinCat boolean_matrix_category();

}  // namespace multikat
