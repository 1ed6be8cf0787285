#pragma once

// Exhaustive orbit enumeration on the case state spaces.
//
// A state space is a lattice in storage coordinates, optionally preceded by
// one front bit (the extension bit t for SL2R, or the degree-class sheet for
// PGL2R), and optionally divided by an identification:
//   b_o quotient:       y ~ y + b_o
//   shifted extension:  (t, v) ~ (t + 1, v + delta), delta = (x_o on w, b_o on y)
// States are encoded as compact codes: the canonical subspace (the image of
// the identification's projection) is put in reduced echelon form and a
// state is its values on the pivot coordinates. Pivot i sits at bit n-1-i of
// the code, so numeric order on codes is lexicographic order on canonical
// storage vectors, and the smallest code in an orbit is its canonical
// representative.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmono/case_id.hpp"
#include "pmono/gf2.hpp"
#include "pmono/lattice.hpp"
#include "pmono/monodromy.hpp"

namespace pmono {

inline constexpr int kExhaustiveCap = 26;

enum class ExtensionConvention { Product, Shifted };
enum class FrontBit { None, Extension, Sheet };

std::string_view to_string(ExtensionConvention e);
ExtensionConvention extension_from_string(std::string_view name);

struct SpaceOptions {
    BoConvention bo = BoConvention::Full;
    FrontBit front = FrontBit::None;
    ExtensionConvention extension = ExtensionConvention::Product;
};

struct StateSpace {
    std::optional<CaseId> case_id;
    SurfaceData sd;
    LatticeDecomp lattice;
    SpaceOptions options;
    std::size_t front_bits = 0;   // 0 or 1, at storage coordinate 0
    std::size_t storage_dim = 0;  // front_bits + lattice.storage_dim
    std::size_t dim = 0;          // compact dimension
    gf2::Gf2Mat projection;       // storage -> storage, idempotent
    gf2::Gf2Mat decode_mat;       // storage x dim
    std::vector<std::size_t> pivots;

    std::uint64_t state_count() const { return std::uint64_t{1} << dim; }
    std::string label() const;
    // Storage vector of a compact code.
    gf2::Gf2Vec decode(std::uint64_t code) const;
    // Code of the class of a storage vector (projection applied first).
    std::uint64_t encode(const gf2::Gf2Vec& storage) const;
    // Storage offset of a lattice block.
    std::size_t offset(BlockRole role) const { return front_bits + lattice.block(role).offset; }
    // "t|w|x''|y|z''|z'" style rendering of a storage vector.
    std::string render(const gf2::Gf2Vec& storage) const;
    // Compact matrix D P G' E of a generator acting on the lattice part.
    // Throws IntegrityError when G does not respect the identification.
    gf2::Gf2Mat compact_matrix(const gf2::Gf2Mat& lattice_gen) const;
};

StateSpace make_state_space(const LatticeDecomp& lattice, const SurfaceData& sd, SpaceOptions options,
                            std::optional<CaseId> case_id = std::nullopt);

// SL2R: LambdaPV with an extension bit; GL2R: LambdaMeta; PGL2R: PGLQuotient
// with a sheet bit for the two degree classes.
StateSpace case_space(CaseId c, const SurfaceData& sd, BoConvention bo,
                      ExtensionConvention ext = ExtensionConvention::Product);

// Compact dimension a space would have, without building it.
std::size_t case_space_dim(CaseId c, const SurfaceData& sd, BoConvention bo, ExtensionConvention ext);

enum class ZPattern { None, Zero, Zpp0ZpNonzero, ZppNonzero };
std::string_view to_string(ZPattern z);

struct StratumKey {
    std::uint32_t front = 0;  // front bit, then w bits, most significant first
    int front_width = 0;
    int eps = 0;  // weight of y, or min(k, 2l-k) under the b_o quotient
    ZPattern zpat = ZPattern::None;
    int pairing = -1;  // <x'', z''> when both blocks exist and z'' != 0

    auto operator<=>(const StratumKey&) const = default;
    std::string to_string() const;
};

struct OrbitInfo {
    std::uint64_t rep = 0;
    std::uint64_t size = 0;
};

struct StratumRow {
    StratumKey key;
    std::uint64_t orbits = 0;
    std::uint64_t elements = 0;
    std::uint64_t singleton_orbits = 0;
    std::string representative;  // rendered smallest orbit representative with this key
};

// Orbit-invariant region used for the comparison with the closed forms.
// eps == -1 stands for all weights.
struct RegionRow {
    ZPattern zpat = ZPattern::None;
    int eps = -1;
    std::optional<std::uint64_t> predicted;
    std::uint64_t observed = 0;
    bool ambiguous = false;
    std::string label() const;
};

struct ProofCheck {
    std::string name;
    std::uint64_t expected = 0;
    std::uint64_t observed = 0;
    bool pass = false;
};

enum class MatchStatus { Exact, LocalizedMismatch, Mismatch, NotApplicable };
std::string_view to_string(MatchStatus m);

struct OrbitReport {
    std::string engine;
    std::string space;
    std::optional<CaseId> case_id;
    int g = 0;
    int s = 0;
    std::size_t dim = 0;
    std::uint64_t state_count = 0;
    std::uint64_t total_orbits = 0;
    std::vector<OrbitInfo> orbits;  // sorted by representative
    std::vector<StratumRow> strata;
    std::vector<std::uint64_t> per_class;  // orbits per front-bit value
    std::optional<std::uint64_t> closed_total;
    MatchStatus match = MatchStatus::NotApplicable;
    std::vector<std::string> mismatch_strata;
    std::vector<RegionRow> discrepancy;
    std::vector<ProofCheck> proof_checks;
    // classify_orbits only: orbits reached from normal-form candidates, and
    // orbits found afterwards by the coverage scan.
    std::uint64_t normal_form_orbits = 0;
    std::uint64_t uncovered_orbits = 0;
    bool partition_ok = false;
};

struct EngineOptions {
    int workers = 1;
};

// Throws UsageError when space.dim exceeds kExhaustiveCap.
OrbitReport enumerate_orbits(const StateSpace& space, const std::vector<MonodromyGen>& gens,
                             EngineOptions opts = {});

// Normal-form candidates first, then a coverage scan. Works slice by slice,
// so only the free (non-invariant) dimension is bounded by the cap.
OrbitReport classify_orbits(const StateSpace& space, const std::vector<MonodromyGen>& gens,
                            EngineOptions opts = {});

OrbitReport sl_extension_orbits(const SurfaceData& sd, const GeneratorConfig& cfg, ExtensionConvention ext,
                                EngineOptions opts = {});
OrbitReport pgl_orbits(const SurfaceData& sd, const GeneratorConfig& cfg, EngineOptions opts = {});

}  // namespace pmono
