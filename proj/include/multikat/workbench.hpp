#pragma once

// Configuration, brute-force entailment oracles and the command-line driver.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multikat/cartesian.hpp"
#include "multikat/io.hpp"
#include "multikat/kernel.hpp"

namespace multikat {

struct WorkbenchConfig {
  std::size_t arity_bound = 3;
  std::size_t hom_cap = 10'000;
  std::size_t carrier_cap = kDefaultCarrierCap;
  std::size_t grid_size = 4;
  std::uint64_t seed = 0x5eed;

  /// Throws SchemaError unless every field is positive and grid_size ≤ 8.
  void validate() const;
  CheckBounds bounds() const;
};

/// Fields present in `j` override `base`; unknown fields are rejected.
WorkbenchConfig config_from_json(const Json& j, WorkbenchConfig base = {});
/// Defaults, overridden by the file named in MULTIKAT_CONFIG when set.
WorkbenchConfig config_from_env();

// Oracles: direct enumeration over witness tuples, without the fibration
// machinery. Isometries are regenerated from coordinates.

/// The isometries of the n×n torus as cell permutations, each listed once.
std::vector<std::vector<std::size_t>> oracle_isometries(std::size_t n);

/// Σ ᾱ_i x_i = target for some α ∈ R^n.
bool oracle_span(const RigModule& m, const std::vector<std::size_t>& elems, std::size_t target);
/// Every element reached by Σ ᾱ_i x_i, as a membership vector over the carrier.
std::vector<bool> oracle_span_targets(const RigModule& m, const std::vector<std::size_t>& elems);

/// g_1A_1 ∪′ … ∪′ g_nA_n = target for some tuple of isometries.
bool oracle_tangram(std::size_t n, const std::vector<std::uint64_t>& pieces, std::uint64_t target);
/// target ⊆ g_1A_1 ∪ … ∪ g_nA_n for some tuple of isometries.
bool oracle_cover(std::size_t n, const std::vector<std::uint64_t>& pieces, std::uint64_t target);
/// Membership vectors over all 2^(n²) figures; n ≤ 4.
std::vector<bool> oracle_tangram_targets(std::size_t n, const std::vector<std::uint64_t>& pieces);
std::vector<bool> oracle_cover_targets(std::size_t n, const std::vector<std::uint64_t>& pieces);

enum class QueryKind { span, tangram, cover };

/// Dispatches to the oracle of `kind`. `module` is used by span only.
bool oracle_entails(QueryKind kind, const std::vector<std::uint64_t>& elems, std::uint64_t target,
                    const RigModule* module = nullptr, std::size_t grid = 4);

/// A multicategory named on the command line, with its fp-structure when it has one.
struct NamedMulticategory {
  MulticategoryPtr multicat;
  std::optional<CartesianMulticategory> fp;
};

/// "cocone:C", "linear:C", "setx:2,1", "tab:FILE", "rig:R", "grothendieck:FILE",
/// where C is a category file or built-in name and R a rig file or built-in name.
NamedMulticategory load_multicategory(std::string_view spec, const WorkbenchConfig& config);

/// Runs the CLI. Exit codes: 0 pass / true, 1 law failure / false, 2 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multikat
