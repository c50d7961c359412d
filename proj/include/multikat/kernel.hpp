#pragma once

// The multicategory abstraction: objects, n-ary arrows with opaque labels,
// multicomposition, functors, and bounded exhaustive law checkers.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multikat/base.hpp"
#include "multikat/report.hpp"

namespace multikat {

/// An object of a multicategory, identified by its index in the owner's
/// enumeration order.
struct ObjId {
  std::uint64_t value = 0;
  auto operator<=>(const ObjId&) const = default;
};

using ObjList = std::vector<ObjId>;

/// Construction-defined arrow payload. The kernel only compares labels.
using Label = std::vector<std::int64_t>;

/// An n-ary arrow ⟨X_1..X_n⟩ → X. Equal iff dom, cod and label are equal.
struct MultiArrow {
  ObjList dom;
  ObjId cod;
  Label label;

  std::size_t arity() const noexcept { return dom.size(); }
  auto operator<=>(const MultiArrow&) const = default;
};

struct CheckBounds {
  std::size_t arity_bound = 3;
  std::size_t hom_cap = 10'000;
  /// Objects used to build domain lists; 0 means all objects. When the
  /// multicategory has more objects, a seeded sample of this size is taken.
  std::size_t max_objects = 0;
  std::uint64_t seed = 0x5eed;
  /// Stop storing violations after this many (they are still counted).
  std::size_t violation_limit = 50;
};

/// A multicategory with lazily enumerated hom-sets. Implementations must be
/// immutable after construction.
class Multicategory {
 public:
  virtual ~Multicategory() = default;

  virtual std::string name() const = 0;
  /// Saturates at UINT64_MAX for structures too large to count.
  virtual std::uint64_t object_count() const = 0;
  /// The i-th object in enumeration order. Object ids are dense indices.
  ObjId object_at(std::uint64_t i) const { return ObjId{i}; }
  bool has_object(ObjId x) const { return x.value < object_count(); }
  virtual std::string object_name(ObjId x) const = 0;
  virtual std::optional<ObjId> find_object(std::string_view name) const;

  /// All arrows dom → cod. Throws EnumerationOverflow when the hom-set has
  /// more than `cap` elements.
  virtual std::vector<MultiArrow> hom(const ObjList& dom, ObjId cod, std::size_t cap) const = 0;
  /// All arrows with domain `dom`, any codomain.
  virtual std::vector<MultiArrow> arrows_from(const ObjList& dom, std::size_t cap) const;
  /// Hom-set membership test (agrees with hom()).
  virtual bool contains(const MultiArrow& f) const = 0;
  virtual MultiArrow identity(ObjId x) const = 0;

  /// f(g_1, …, g_n). Validates arities, objects and membership.
  MultiArrow compose(const MultiArrow& f, std::span<const MultiArrow> args) const;
  /// As compose() without validation; arguments must already be composable
  /// arrows of this multicategory.
  MultiArrow compose_raw(const MultiArrow& f, std::span<const MultiArrow> args) const {
    return do_compose(f, args);
  }

  /// Derived single-slot composition f ∘_i g (other slots filled with identities).
  MultiArrow compose_at(const MultiArrow& f, std::size_t slot, const MultiArrow& g) const;

  virtual std::string describe_label(const MultiArrow& f) const;
  /// "X,Y -> Z : label".
  std::string describe(const MultiArrow& f) const;
  std::string describe_list(const ObjList& objs) const;

  /// Looks up the arrow printed as `text` ("dom -> cod : label").
  MultiArrow parse_arrow(std::string_view text, std::size_t cap) const;
  ObjList parse_object_list(std::string_view text) const;

 protected:
  virtual MultiArrow do_compose(const MultiArrow& f, std::span<const MultiArrow> args) const = 0;
};

using MulticategoryPtr = std::shared_ptr<const Multicategory>;

/// A (strict) functor between multicategories.
struct MultiFunctor {
  std::string name;
  MulticategoryPtr source;
  MulticategoryPtr target;
  std::function<ObjId(ObjId)> on_objects;
  std::function<MultiArrow(const MultiArrow&)> on_arrows;

  ObjList map_objects(const ObjList& objs) const;
};

MultiFunctor identity_multifunctor(MulticategoryPtr m);
MultiFunctor compose_multifunctors(const MultiFunctor& g, const MultiFunctor& f);

/// Identity laws and associativity of multicomposition over all composable
/// tuples whose levels each have total arity ≤ bounds.arity_bound. Also
/// verifies that composites land in the stated hom-set and that enumerated
/// arrows pass the membership test.
LawReport check_multicategory(const Multicategory& m, const CheckBounds& bounds = {});

/// F(id) = id and F(f(g_1..g_n)) = Ff(Fg_1..Fg_n) within bounds.
LawReport check_functor(const MultiFunctor& f, const CheckBounds& bounds = {});

/// The category of unary arrows. Object and arrow names follow `m`; arrow
/// ids follow the order of unary_arrows().
FinCategory underlying_category(const Multicategory& m, std::size_t cap = 10'000);

/// All unary arrows, grouped by (dom, cod) in object order.
std::vector<MultiArrow> unary_arrows(const Multicategory& m, std::size_t cap = 10'000);

/// Bounded enumeration helpers shared by the checkers.
class HomEnumerator {
 public:
  HomEnumerator(const Multicategory& m, const CheckBounds& bounds);

  const Multicategory& multicategory() const noexcept { return m_; }
  const CheckBounds& bounds() const noexcept { return bounds_; }
  /// Objects used for domain lists (all, or a seeded sample).
  const std::vector<ObjId>& objects() const noexcept { return objects_; }

  const std::vector<MultiArrow>& hom(const ObjList& dom, ObjId cod);
  const std::vector<MultiArrow>& arrows_from(const ObjList& dom);
  /// All object lists over objects() with length in [min_len, max_len].
  std::vector<ObjList> lists(std::size_t min_len, std::size_t max_len) const;

  /// Calls visit(f) for every arrow whose arity is ≤ max_arity.
  void for_each_arrow(std::size_t max_arity, const std::function<void(const MultiArrow&)>& visit);

  /// Calls visit(args) for every tuple (g_1..g_n) with cod(g_i) = cods[i] and
  /// total arity ≤ max_total.
  void for_each_args(const ObjList& cods, std::size_t max_total,
                     const std::function<void(const std::vector<MultiArrow>&)>& visit);

 private:
  const Multicategory& m_;
  CheckBounds bounds_;
  std::vector<ObjId> objects_;
  std::map<std::pair<ObjList, ObjId>, std::vector<MultiArrow>> hom_cache_;
  std::map<ObjList, std::vector<MultiArrow>> from_cache_;
};

/// Search for functors M → N (optionally bijective on every hom-set within
/// bounds, i.e. isomorphisms) extending a fixed object map. Arrows of arity
/// ≤ bounds.arity_bound are assigned by backtracking; every composition
/// instance within bounds is enforced. Returns the arrow maps found.
struct FunctorSearchResult {
  std::vector<std::map<MultiArrow, MultiArrow>> maps;
  std::size_t nodes = 0;
};

FunctorSearchResult search_functors(const Multicategory& m, const Multicategory& n,
                                    const std::function<ObjId(ObjId)>& on_objects,
                                    const CheckBounds& bounds, bool bijective,
                                    std::size_t max_results = static_cast<std::size_t>(-1),
                                    std::size_t max_nodes = 10'000'000);

/// Finds an object-map-guided isomorphism M ≅ N within bounds.
std::optional<std::map<MultiArrow, MultiArrow>> find_isomorphism(
    const Multicategory& m, const Multicategory& n, const std::function<ObjId(ObjId)>& on_objects,
    const CheckBounds& bounds);

/// A multicategory given by explicit tables up to arity bound A. Arrows are
/// numbered; label = [arrow index]. Composites with identities are filled in
/// automatically unless listed. Throws SchemaError at construction unless
/// every composite of total arity ≤ A is listed and well typed.
class TabulatedMulticategory final : public Multicategory {
 public:
  struct Arrow {
    std::string name;
    ObjList dom;
    ObjId cod;
  };
  struct Entry {
    std::size_t f;
    std::vector<std::size_t> args;
    std::size_t result;
  };

  TabulatedMulticategory(std::string name, std::vector<std::string> objects, std::size_t arity_bound,
                         std::vector<Arrow> arrows, std::vector<std::size_t> identities,
                         std::vector<Entry> composition);

  std::string name() const override { return name_; }
  std::uint64_t object_count() const override { return objects_.size(); }
  std::string object_name(ObjId x) const override { return objects_.at(x.value); }
  std::vector<MultiArrow> hom(const ObjList& dom, ObjId cod, std::size_t cap) const override;
  bool contains(const MultiArrow& f) const override;
  MultiArrow identity(ObjId x) const override;
  std::string describe_label(const MultiArrow& f) const override;

  std::size_t arity_bound() const noexcept { return arity_bound_; }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::vector<std::size_t>& identities() const noexcept { return identities_; }
  /// The listed composition entries (without the automatic identity ones).
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  MultiArrow arrow(std::size_t i) const;

 protected:
  MultiArrow do_compose(const MultiArrow& f, std::span<const MultiArrow> args) const override;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::size_t arity_bound_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> identities_;
  std::vector<Entry> entries_;
  std::map<std::vector<std::size_t>, std::size_t> table_;
};

/// Lists of length ≤ n are encoded as strings like "X,Y"; parentheses nest.
std::vector<std::string> split_top_level(std::string_view text, char sep);

}  // namespace multikat
