#pragma once

// Monodromy generators on the three case lattices:
//   GL2R  -> LambdaMeta   (the full action)
//   SL2R  -> LambdaPV     (restriction to w, x, y)
//   PGL2R -> PGLQuotient  (descent to y, z'', z')
// Branch indices i, j are 1-based throughout, as are the pairs (i, j) in
// generator labels.

#include <optional>
#include <string>
#include <vector>

#include "pmono/case_id.hpp"
#include "pmono/gf2.hpp"
#include "pmono/lattice.hpp"

namespace pmono {

enum class GenKind { Swap, Transvection, CompositeA, Extra };

struct MonodromyGen {
    GenKind kind = GenKind::Swap;
    LatticeKind space = LatticeKind::LambdaMeta;
    gf2::Gf2Mat matrix;
    int i = 0;
    int j = 0;
    gf2::Gf2Vec x;  // CompositeA parameter, in LambdaX coordinates
    gf2::Gf2Vec c;  // Transvection vector

    std::string label() const;
};

enum class BoConvention { Full, Quotient };
enum class XRange { Basis, All };

struct GeneratorConfig {
    CaseId case_id = CaseId::GL2R;
    BoConvention bo_convention = BoConvention::Full;
    XRange x_range = XRange::Basis;
    // Adjacent swaps plus A_12^x only. Generates the same group, since every
    // A_ij^x is a swap-conjugate of A_12^x.
    bool minimal = false;
    // Extra involution on the case lattice's storage coordinates, used for
    // experiments with the cover involution. Off by default.
    std::optional<gf2::Gf2Mat> extra;
    bool allow_low_genus = false;
};

std::string_view to_string(BoConvention c);
BoConvention bo_convention_from_string(std::string_view name);

LatticeKind case_lattice(CaseId c);

// v -> v + <c, v> c using ld's form.
MonodromyGen picard_lefschetz(const LatticeDecomp& ld, const gf2::Gf2Vec& c);

// Transposition of b_i and b_j on the y block, identity elsewhere.
MonodromyGen gen_swap(const SurfaceData& sd, const LatticeDecomp& ld, int i, int j);

// A_ij^x on LambdaMeta, or its restriction (LambdaPV) / descent (PGLQuotient).
MonodromyGen gen_A(const SurfaceData& sd, const LatticeDecomp& ld, int i, int j, const gf2::Gf2Vec& x);

// Throws HypothesisViolation for g < 2 unless cfg.allow_low_genus, and
// UsageError when cfg.extra has the wrong shape or is singular.
std::vector<MonodromyGen> generator_set(const GeneratorConfig& cfg, const SurfaceData& sd);

struct IdentityCheck {
    std::string name;
    std::size_t checked = 0;
    std::size_t failures = 0;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool pass = false;
};

// All identities over every pair (i, j) and every x in `range`.
IdentityReport verify_generator_identities(const SurfaceData& sd, XRange range = XRange::All);

}  // namespace pmono
