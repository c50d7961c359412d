#pragma once

// Plain-level constructions: discrete cocones C_▶, linear C_!, products,
// the representable Set_× on finite sets, monoid objects and the
// (-)_▶ ⊣ Mon(-) and (-)_! ⊣ underlying transposes.

#include <memory>
#include <optional>
#include <vector>

#include "multikat/base.hpp"
#include "multikat/kernel.hpp"

namespace multikat {

/// C_▶: n-arrows ⟨X_1..X_n⟩ → X are tuples ⟨λ_1..λ_n⟩ with λ_i : X_i → X.
/// The label is the list of base arrow ids.
class CoconeMulticategory final : public Multicategory {
 public:
  explicit CoconeMulticategory(std::shared_ptr<const FinCategory> base);

  const FinCategory& base() const noexcept { return *base_; }
  const std::shared_ptr<const FinCategory>& base_ptr() const noexcept { return base_; }

  std::string name() const override { return base_->name() + "_▶"; }
  std::uint64_t object_count() const override { return base_->object_count(); }
  std::string object_name(ObjId x) const override { return base_->objects().at(x.value); }
  std::vector<MultiArrow> hom(const ObjList& dom, ObjId cod, std::size_t cap) const override;
  bool contains(const MultiArrow& f) const override;
  MultiArrow identity(ObjId x) const override;
  std::string describe_label(const MultiArrow& f) const override;

  /// The arrow ⟨λ_1..λ_n⟩ with codomain `cod` (needed when n = 0).
  MultiArrow arrow(const std::vector<ArrowId>& legs, ObjIndex cod) const;
  static std::vector<ArrowId> legs(const MultiArrow& f);

 protected:
  MultiArrow do_compose(const MultiArrow& f, std::span<const MultiArrow> args) const override;

 private:
  std::shared_ptr<const FinCategory> base_;
};

/// C_!: the unary arrows of C and nothing else. Label = [arrow id].
class LinearMulticategory final : public Multicategory {
 public:
  explicit LinearMulticategory(std::shared_ptr<const FinCategory> base);

  const FinCategory& base() const noexcept { return *base_; }

  std::string name() const override { return base_->name() + "_!"; }
  std::uint64_t object_count() const override { return base_->object_count(); }
  std::string object_name(ObjId x) const override { return base_->objects().at(x.value); }
  std::vector<MultiArrow> hom(const ObjList& dom, ObjId cod, std::size_t cap) const override;
  bool contains(const MultiArrow& f) const override;
  MultiArrow identity(ObjId x) const override;
  std::string describe_label(const MultiArrow& f) const override;

 protected:
  MultiArrow do_compose(const MultiArrow& f, std::span<const MultiArrow> args) const override;

 private:
  std::shared_ptr<const FinCategory> base_;
};

/// M × N: objects are pairs (index i * |N| + j), arrows are pairs of arrows.
/// Label = [|label_M|, label_M..., label_N...].
class ProductMulticategory final : public Multicategory {
 public:
  ProductMulticategory(MulticategoryPtr first, MulticategoryPtr second);

  const Multicategory& first() const noexcept { return *first_; }
  const Multicategory& second() const noexcept { return *second_; }

  std::string name() const override { return first_->name() + "×" + second_->name(); }
  std::uint64_t object_count() const override;
  std::string object_name(ObjId x) const override;
  std::vector<MultiArrow> hom(const ObjList& dom, ObjId cod, std::size_t cap) const override;
  bool contains(const MultiArrow& f) const override;
  MultiArrow identity(ObjId x) const override;
  std::string describe_label(const MultiArrow& f) const override;

  ObjId pair(ObjId x, ObjId y) const;
  ObjId first_object(ObjId p) const;
  ObjId second_object(ObjId p) const;
  MultiArrow pair(const MultiArrow& f, const MultiArrow& g) const;
  MultiArrow first_arrow(const MultiArrow& f) const;
  MultiArrow second_arrow(const MultiArrow& f) const;

 protected:
  MultiArrow do_compose(const MultiArrow& f, std::span<const MultiArrow> args) const override;

 private:
  MulticategoryPtr first_;
  MulticategoryPtr second_;
};

std::pair<MultiFunctor, MultiFunctor> product_projections(
    const std::shared_ptr<const ProductMulticategory>& p);

/// Set_× restricted to the given finite sets. An arrow ⟨X_1..X_n⟩ → X is the
/// function table of X_1×…×X_n → X, inputs enumerated in mixed radix with
/// the first coordinate most significant. The empty product has one point.
class SetxMulticategory final : public Multicategory {
 public:
  explicit SetxMulticategory(std::vector<FinSetObj> sets, std::string name = "Set×");

  const std::vector<FinSetObj>& sets() const noexcept { return sets_; }
  const FinSetObj& set(ObjId x) const { return sets_.at(x.value); }

  std::string name() const override { return name_; }
  std::uint64_t object_count() const override { return sets_.size(); }
  std::string object_name(ObjId x) const override { return sets_.at(x.value).name; }
  std::vector<MultiArrow> hom(const ObjList& dom, ObjId cod, std::size_t cap) const override;
  bool contains(const MultiArrow& f) const override;
  MultiArrow identity(ObjId x) const override;
  std::string describe_label(const MultiArrow& f) const override;

  /// Size of X_1×…×X_n (saturating).
  std::uint64_t product_size(const ObjList& dom) const;
  /// Builds the arrow dom → cod from a function on coordinate tuples.
  MultiArrow tabulate(const ObjList& dom, ObjId cod,
                      const std::function<std::size_t(std::span<const std::size_t>)>& fn) const;
  /// Evaluates f at a coordinate tuple.
  std::size_t apply(const MultiArrow& f, std::span<const std::size_t> point) const;

 protected:
  MultiArrow do_compose(const MultiArrow& f, std::span<const MultiArrow> args) const override;

 private:
  std::string name_;
  std::vector<FinSetObj> sets_;
};

/// Iterates all coordinate tuples of X_1×…×X_n in table order.
void for_each_point(std::span<const std::size_t> sizes,
                    const std::function<void(std::span<const std::size_t>)>& visit);

std::shared_ptr<const CoconeMulticategory> discrete_cocone(std::shared_ptr<const FinCategory> c);
std::shared_ptr<const LinearMulticategory> linear(std::shared_ptr<const FinCategory> c);
std::shared_ptr<const ProductMulticategory> product(MulticategoryPtr m, MulticategoryPtr n);
std::shared_ptr<const SetxMulticategory> rep_of_finsets(std::vector<FinSetObj> sets);

/// 1_▶, the terminal multicategory.
std::shared_ptr<const CoconeMulticategory> terminal_multicategory();
/// 1 = (terminal category)_!, one object and only its identity.
std::shared_ptr<const LinearMulticategory> unit_multicategory();

/// F_▶ : C_▶ → D_▶, ⟨λ_i⟩ ↦ ⟨Fλ_i⟩.
MultiFunctor cocone_functor(const FinFunctor& f,
                            std::shared_ptr<const CoconeMulticategory> source = nullptr,
                            std::shared_ptr<const CoconeMulticategory> target = nullptr);

// ---------------------------------------------------------------------------
// Monoids

/// A monoid (X, m_0, m_2) in a multicategory.
struct MonoidObject {
  ObjId carrier;
  MultiArrow unit;  // m_0 ∈ M(;X)
  MultiArrow mult;  // m_2 ∈ M(X,X;X)
  auto operator<=>(const MonoidObject&) const = default;
};

/// m_n, left-nested: m_1 = id, m_{n} = m_2(m_{n-1}, id).
MultiArrow monoid_nary(const Multicategory& m, const MonoidObject& mon, std::size_t n);

/// Associativity and unit laws of (X, m_0, m_2) in M.
bool is_monoid(const Multicategory& m, const MonoidObject& mon);
/// f∘m_2 = m_2(f, f) and f∘m_0 = m_0.
bool is_monoid_morphism(const Multicategory& m, const MonoidObject& from, const MonoidObject& to,
                        const MultiArrow& f);

/// Mon(M) with its inventory: category object i is `objects[i]`, category
/// arrow a is the unary arrow `morphisms[a]` of M.
struct MonoidCategory {
  MulticategoryPtr ambient;
  std::vector<MonoidObject> objects;
  std::vector<MultiArrow> morphisms;
  std::shared_ptr<const FinCategory> category;

  std::optional<ObjIndex> find_object(const MonoidObject& mon) const;
  std::optional<ArrowId> find_morphism(ObjIndex from, ObjIndex to, const MultiArrow& f) const;
};

/// Exhaustive search of monoid structures and morphisms. When `admit` is
/// set, only monoids it accepts become objects.
MonoidCategory monoid_category(MulticategoryPtr m, std::size_t cap = 10'000,
                               const std::function<bool(const MonoidObject&)>& admit = nullptr);

/// A functor C → Mon(N): each object of C goes to a monoid in N and each
/// arrow of C to a unary arrow of N.
struct MonoidValuedFunctor {
  std::shared_ptr<const FinCategory> source;
  MulticategoryPtr target;
  std::vector<MonoidObject> on_objects;
  std::vector<MultiArrow> on_arrows;

  bool operator==(const MonoidValuedFunctor& other) const {
    return on_objects == other.on_objects && on_arrows == other.on_arrows;
  }
};

/// Monoid laws for every image, morphism laws for every arrow, functoriality.
LawReport check_monoid_valued_functor(const MonoidValuedFunctor& g);

/// The same functor as a FinFunctor into `mon.category`.
FinFunctor as_fin_functor(const MonoidValuedFunctor& g, const MonoidCategory& mon);

/// F : C_▶ → N ↦ (X ↦ (FX, F⟨⟩, F⟨id,id⟩), λ ↦ F⟨λ⟩). Throws
/// MonoidLawFailure when the induced data is not a functor into Mon(N).
MonoidValuedFunctor transpose_to_cat(const MultiFunctor& f);

/// G : C → Mon(N) ↦ (⟨λ_1..λ_n⟩ ↦ m_n^{GX}(Gλ_1..Gλ_n)).
MultiFunctor transpose_to_mlt(const MonoidValuedFunctor& g,
                              std::shared_ptr<const CoconeMulticategory> source = nullptr);

/// Enumerates every functor C → Mon(N) by brute force over object images
/// and arrow images (within the monoid inventory of N).
std::vector<MonoidValuedFunctor> enumerate_monoid_valued_functors(
    std::shared_ptr<const FinCategory> c, const MonoidCategory& mon);

/// (-)_! ⊣ underlying: F : C_! → N ↦ its action on unary arrows, as a
/// functor C → underlying(N) (arrow ids follow underlying_category(N)).
FinFunctor transpose_linear_to_cat(const MultiFunctor& f, std::size_t cap = 10'000);
MultiFunctor transpose_linear_to_mlt(const FinFunctor& g, MulticategoryPtr target,
                                     std::shared_ptr<const LinearMulticategory> source = nullptr);

}  // namespace multikat
