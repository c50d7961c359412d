#pragma once

// Indexed monoids C → Mon(Set), their Grothendieck construction M̂ with the
// projection to C_▶, module fibrations over R_▶, and the figure, Tangram
// and cover fibrations on a discrete torus.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multikat/base.hpp"
#include "multikat/cartesian.hpp"
#include "multikat/constructions.hpp"
#include "multikat/kernel.hpp"

namespace multikat {

/// A monoid on {0..size-1} given by its operation, for carriers too large
/// to tabulate. Posetal fibers also carry `leq(a, b)`: a morphism a → b.
struct FiberMonoid {
  std::string name;
  std::uint64_t size = 0;
  std::uint64_t unit = 0;
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> op;
  std::function<std::string(std::uint64_t)> element_name;
  /// Optional; find() falls back to a scan of element names.
  std::function<std::optional<std::uint64_t>(std::string_view)> parse;
  std::function<bool(std::uint64_t, std::uint64_t)> leq;

  bool posetal() const noexcept { return static_cast<bool>(leq); }
  /// a → b: equality for discrete fibers, leq for posetal ones.
  bool relates(std::uint64_t a, std::uint64_t b) const { return leq ? leq(a, b) : a == b; }
  std::string name_of(std::uint64_t a) const;
  std::optional<std::uint64_t> find(std::string_view text) const;
};

FiberMonoid fiber_of(const FinMonoid& m);
/// The fiber's operation as a table. Throws EnumerationOverflow above `cap`.
FinMonoid tabulate_fiber(const FiberMonoid& f, std::size_t cap = 4096);

/// A strict functor C → Mon(Set): one fiber per object of C and, for each
/// arrow λ : X → Y, the homomorphism action(λ, -) : fiber(X) → fiber(Y).
struct IndexedMonoid {
  std::string name;
  std::shared_ptr<const FinCategory> base;
  std::vector<FiberMonoid> fibers;
  std::function<std::uint64_t(ArrowId, std::uint64_t)> action;

  bool posetal() const noexcept { return !fibers.empty() && fibers.front().posetal(); }
  /// action(λ_1)(a_1) · … · action(λ_n)(a_n) in fiber(cod), left-nested.
  std::uint64_t product(ObjIndex cod, std::span<const ArrowId> legs,
                        std::span<const std::uint64_t> elems) const;
};

/// Posetal variant: fibers with `leq`, op and actions monotone.
using IndexedMonoidalPoset = IndexedMonoid;

/// Tuples per law are enumerated exhaustively up to `budget`; beyond it a
/// seeded sample of `budget` tuples is checked.
struct FiberBounds {
  std::uint64_t budget = 1u << 22;
  std::uint64_t seed = 0x5eed;
  std::size_t violation_limit = 50;
};

/// Monoid laws per fiber, functoriality of the action, and each action being
/// a monoid homomorphism; for posetal fibers also the poset laws and
/// monotonicity of op and of the actions.
LawReport check_indexed_monoid(const IndexedMonoid& im, const FiberBounds& bounds = {});

/// M̂: objects are pairs (X, a ∈ fiber(X)); an arrow ⟨a_1..a_n⟩ → a is a
/// tuple ⟨λ_i : X_i → X⟩ with Πλ_i a_i → a in fiber(X). Label = legs.
class GrothendieckMulticategory final : public Multicategory {
 public:
  /// Does not re-check the laws of `im`. `cone` defaults to discrete_cocone(im.base).
  explicit GrothendieckMulticategory(IndexedMonoid im,
                                     std::shared_ptr<const CoconeMulticategory> cone = nullptr);

  const IndexedMonoid& indexed() const noexcept { return im_; }
  const std::shared_ptr<const CoconeMulticategory>& cone() const noexcept { return cone_; }

  ObjId object(ObjIndex x, std::uint64_t elem) const;
  ObjIndex base_of(ObjId a) const;
  std::uint64_t elem_of(ObjId a) const;

  std::string name() const override { return im_.name + "^"; }
  std::uint64_t object_count() const override;
  /// "a" when C has one object, "X:a" otherwise.
  std::string object_name(ObjId a) const override;
  std::optional<ObjId> find_object(std::string_view name) const override;
  /// Legs in lexicographic order of the base hom-sets.
  std::vector<MultiArrow> hom(const ObjList& dom, ObjId cod, std::size_t cap) const override;
  std::vector<MultiArrow> arrows_from(const ObjList& dom, std::size_t cap) const override;
  bool contains(const MultiArrow& f) const override;
  MultiArrow identity(ObjId a) const override;
  std::string describe_label(const MultiArrow& f) const override;

  /// Every object over `cod` that admits ⟨legs⟩ from `dom`, by a scan of the fiber.
  std::vector<ObjId> lifts(const ObjList& dom, std::span<const ArrowId> legs, ObjIndex cod) const;

 protected:
  MultiArrow do_compose(const MultiArrow& f, std::span<const MultiArrow> args) const override;

 private:
  std::uint64_t product_of(const ObjList& dom, std::span<const ArrowId> legs, ObjIndex cod) const;

  IndexedMonoid im_;
  std::shared_ptr<const CoconeMulticategory> cone_;
  std::vector<std::uint64_t> offsets_;
};

struct Grothendieck {
  std::shared_ptr<const GrothendieckMulticategory> total;
  /// (X, a) ↦ X, ⟨λ_i⟩ ↦ ⟨λ_i⟩.
  MultiFunctor proj;
};

Grothendieck grothendieck(const IndexedMonoid& im,
                          std::shared_ptr<const CoconeMulticategory> cone = nullptr);

/// For every base arrow ⟨λ_1..λ_n⟩ of C_▶ with n ≤ arity_bound and every
/// tuple of sources over its domain, counts the lifts by brute force and
/// expects exactly one ("unique lift"). Fibers larger than max_objects
/// (when nonzero) contribute a seeded sample of that many sources.
LawReport check_unique_lifts(const GrothendieckMulticategory& m, const CheckBounds& bounds = {});

/// The fiber over X recovered from M̂ by pulling back along X : 1_▶ → C_▶:
/// unit from ⟨⟩, a·b as the least c with ⟨a,b⟩ → c, and the order from the
/// unary arrows over id_X (order[a * size + b] iff a → b).
struct ExtractedFiber {
  FinMonoid monoid;
  std::vector<bool> order;
};

ExtractedFiber extract_fiber(const GrothendieckMulticategory& m, ObjIndex x,
                             std::size_t cap = 4096);

/// A rig module as an indexed monoid over the one-object category R.
IndexedMonoid module_indexed_monoid(const RigModule& m,
                                    std::shared_ptr<const FinCategory> base = nullptr);

/// M̂ → R_▶ for a module, with the fp-structure on M̂ (legs acted on as in
/// R_▶) and the projection as an fp-functor.
struct ModuleFibration {
  RigModule module;
  CartesianMulticategory base;
  Grothendieck groth;
  CartesianMulticategory total;
  FpFunctor proj;
};

ModuleFibration module_fibration(const RigModule& m);

/// Answer to an entailment query ⟨a_1..a_n⟩ ⊢ a: whether some witness
/// exists, and witnesses in lexicographic order up to the requested limit.
struct Entailment {
  bool holds = false;
  std::vector<std::vector<ArrowId>> witnesses;
  /// Set when the limit stopped the witness enumeration early.
  bool truncated = false;
};

/// hom(⟨a_i⟩; a) in M̂: the ⟨λ_i⟩ with Σ λ̄_i a_i = a.
Entailment span_query(const ModuleFibration& mf, const std::vector<std::uint64_t>& elems,
                      std::uint64_t target, std::size_t witness_limit = SIZE_MAX);

/// The n×n discrete torus (1 ≤ n ≤ 8) with its isometries (translations
/// composed with the 8 lattice rotations and reflections), each listed once.
/// A figure is a bit mask over cells, bit y*n + x for the cell (x, y).
class Torus {
 public:
  using Figure = std::uint64_t;

  explicit Torus(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t cells() const noexcept { return n_ * n_; }
  Figure full() const noexcept;
  /// One-object category of the isometry group. Arrow 0 is the identity.
  const std::shared_ptr<const FinCategory>& group() const noexcept { return group_; }
  std::size_t group_size() const noexcept { return perms_.size(); }
  /// perm(g)[cell] = image cell.
  const std::vector<std::size_t>& perm(ArrowId g) const { return perms_.at(g); }
  Figure image(ArrowId g, Figure a) const;

  /// "{(0,0),(1,0)}".
  std::string figure_name(Figure a) const;
  /// Explicit cell sets, or the shape names ∅/empty, sq1, domino, all.
  std::optional<Figure> parse_figure(std::string_view text) const;

 private:
  std::size_t n_;
  std::vector<std::vector<std::size_t>> perms_;
  std::shared_ptr<const FinCategory> group_;
};

/// Single object, fiber (P(grid), ∪, ∅), action by image. The three torus
/// fibrations need n ≤ 7 (EnumerationOverflow otherwise).
IndexedMonoid figure_fibration(std::shared_ptr<const Torus> t);
/// Fiber (P(grid), ∪′, ∅): A ∪′ B = A ∪ B when disjoint, the whole grid otherwise.
IndexedMonoid tangram_fibration(std::shared_ptr<const Torus> t);
/// Fiber (P(grid), ⊇, ∪, ∅): a morphism U → A iff U ⊇ A.
IndexedMonoidalPoset cover_fibration(std::shared_ptr<const Torus> t);

/// ⟨A_i⟩ ⊢ A in the Tangram fibration: some placement ⟨λ_i⟩ with
/// λ_1A_1 ∪′ … ∪′ λ_nA_n = A. Witnesses are tuples of isometries.
Entailment tangram_entails(const Torus& t, const std::vector<Torus::Figure>& pieces,
                           Torus::Figure target, std::size_t witness_limit = SIZE_MAX);
/// ⟨A_i⟩ ⊢ A in the cover fibration: A ⊆ λ_1A_1 ∪ … ∪ λ_nA_n.
Entailment cover_entails(const Torus& t, const std::vector<Torus::Figure>& pieces,
                         Torus::Figure target, std::size_t witness_limit = SIZE_MAX);

}  // namespace multikat
