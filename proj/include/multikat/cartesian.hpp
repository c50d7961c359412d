#pragma once

// fp-structures: actions of index maps on hom-sets, their compatibility
// laws, the structures on C_▶ (preadditive C) and Set×, cMon(-), and rig
// modules as fp-functors R_▶ → Set×.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "multikat/base.hpp"
#include "multikat/constructions.hpp"
#include "multikat/kernel.hpp"

namespace multikat {

/// An arrow p : src → tgt of N/obj M, i.e. a function n → m with
/// tgt[map[i]] = src[i].
struct IndexMap {
  ObjList src;
  ObjList tgt;
  std::vector<std::size_t> map;

  bool is_bijection() const;
  bool operator==(const IndexMap&) const = default;
};

/// Throws ObjectMismatch unless the map is well formed and over the objects.
void validate(const IndexMap& p);

/// "1↦2,2↦1,3↦2" (one-based, as in the literature).
std::string describe(const IndexMap& p);

IndexMap identity_index_map(const ObjList& objs);
/// q∘p. Throws ObjectMismatch unless p.tgt = q.src.
IndexMap compose_index_maps(const IndexMap& q, const IndexMap& p);

/// p_1 + … + p_n: concatenated sources and targets, block i shifted by the
/// lengths of the preceding targets.
IndexMap block_sum(std::span<const IndexMap> ps);

/// p′ for the second compatibility law. arg_doms[j] is the domain of the
/// argument plugged into target slot j; block i of the source (length
/// |arg_doms[p(i)]|) goes identically onto block p(i) of the target.
IndexMap derived_map(const IndexMap& p, const std::vector<ObjList>& arg_doms);

/// ν_n : n → 1 over the constant list X,…,X.
IndexMap contraction(ObjId x, std::size_t n);
/// δ_1 : ⟨X⟩ → ⟨X,Y⟩ (which = 0) or δ_2 : ⟨Y⟩ → ⟨X,Y⟩ (which = 1).
IndexMap weakening(ObjId x, ObjId y, std::size_t which);
/// σ : ⟨X,Y⟩ → ⟨Y,X⟩.
IndexMap exchange(ObjId x, ObjId y);

/// All index maps out of `src` whose target is a list over `objects` of
/// length ≤ max_len.
std::vector<IndexMap> index_maps_from(const ObjList& src, std::span<const ObjId> objects,
                                      std::size_t max_len, bool bijections_only = false);

using ActFn = std::function<MultiArrow(const IndexMap&, const MultiArrow&)>;

/// A multicategory with an fp-structure: p acts as M(src; Z) → M(tgt; Z).
struct CartesianMulticategory {
  std::string name;
  MulticategoryPtr multicat;
  ActFn act_fn;

  /// p·f, validating that p is over f's domain.
  MultiArrow act(const IndexMap& p, const MultiArrow& f) const;
};

/// Functoriality of the action in p, typing, and both compatibility laws,
/// over arrows and index maps within bounds. With bijections_only every
/// index map is restricted to a bijection (the symmetric level).
LawReport check_fp(const CartesianMulticategory& cm, const CheckBounds& bounds = {},
                   bool bijections_only = false);

/// C_▶ with sums on contractions and zeros on weakenings. `owner` defaults
/// to discrete_cocone(c.base).
CartesianMulticategory fp_of_preadditive(const PreadditiveFinCat& c,
                                         std::shared_ptr<const CoconeMulticategory> owner = nullptr);

/// Set× with diagonals and projections: (pf)(y_1..y_m) = f(y_p1, …, y_pn).
CartesianMulticategory fp_of_finsets(std::shared_ptr<const SetxMulticategory> s);

struct FpFunctor {
  MultiFunctor functor;
  CartesianMulticategory source;
  CartesianMulticategory target;
};

/// Plain functoriality plus F(p·f) = (Fp)·(Ff), Fp being p with its object
/// lists mapped by F.
LawReport check_fp_functor(const FpFunctor& f, const CheckBounds& bounds = {});

/// cMon(M): commutative monoids (those with σ·m_2 = m_2) and monoid
/// morphisms, with f+g = ν_2·m_2(f,g) and 0 = ν_0·m_0.
struct CmonCategory {
  MonoidCategory monoids;
  PreadditiveFinCat category;
};

CmonCategory cmon_category(const CartesianMulticategory& cm, std::size_t cap = 10'000);

/// A module over a rig: commutative monoid X with scalar[α * |X| + x] = ᾱx.
struct RigModule {
  FinRig rig;
  CommMonoid carrier;
  std::vector<std::size_t> scalar;

  std::size_t size() const noexcept { return carrier.size(); }
  std::size_t act(std::size_t alpha, std::size_t x) const { return scalar[alpha * size() + x]; }
  bool operator==(const RigModule& other) const {
    return rig.add.table == other.rig.add.table && rig.mul.table == other.rig.mul.table &&
           carrier.table == other.carrier.table && carrier.unit == other.carrier.unit &&
           carrier.size() == other.carrier.size() && scalar == other.scalar;
  }
};

/// Commutative monoid laws of X and the six module axioms.
LawReport check_module(const RigModule& m);

/// The rig R as a module over itself.
RigModule regular_module(const FinRig& r);

/// R^k with componentwise operations; elements named "(a,b)", first
/// coordinate most significant.
RigModule power_module(const FinRig& r, std::size_t k);

/// R_▶ for a rig R, with its fp-structure.
CartesianMulticategory rig_operad(const FinRig& r);

/// F ↦ (F(∗), + = F⟨1,1⟩, 0 = F⟨⟩, ᾱ = F⟨α⟩). Throws ModuleLawFailure when
/// the result is not a module. The source must be rig_operad(R).
RigModule transpose_module(const FpFunctor& f);

/// ⟨λ_1..λ_n⟩ ↦ ((x_i) ↦ Σ λ̄_i x_i), into Set× on the carrier. Throws
/// ModuleLawFailure unless m passes check_module. `source` defaults to
/// rig_operad(m.rig).
FpFunctor module_to_fp(const RigModule& m, const CartesianMulticategory* source = nullptr);

/// The plain functor R_▶ → Set× with F⟨1,1⟩ = +, F⟨⟩ = 0 and F⟨α⟩ = ᾱ,
/// when those data form a monoid with an action of (R, ·) by monoid
/// endomorphisms. Additivity in α is not required; check_fp_functor
/// decides it. Throws MonoidLawFailure otherwise.
FpFunctor generators_to_fp(const RigModule& m, const CartesianMulticategory* source = nullptr);

/// All monoids on the labeled carrier {0..n-1}.
std::vector<FinMonoid> enumerate_monoids(std::size_t n, bool commutative_only = false);

/// All rig modules with carrier {0..n-1}, by brute force over commutative
/// monoids and scalar tables.
std::vector<RigModule> enumerate_modules(const FinRig& r, std::size_t n);

/// All plain functors R_▶ → Set× on one set of size n, as transposes of
/// functors R → Mon(Set×). Each candidate carries the fp-structures so that
/// it can be handed to check_fp_functor.
std::vector<FpFunctor> enumerate_rig_functors(const FinRig& r, std::size_t n,
                                              const CartesianMulticategory* source = nullptr);

}  // namespace multikat
