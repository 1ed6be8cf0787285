#pragma once

// Cell models of the punctured base surface and of its double cover branched
// at the marked points, with GF(2) cohomology ranks computed from the
// boundary matrices.

#include <cstddef>
#include <string>

#include "pmono/gf2.hpp"

namespace pmono {

struct CellComplex {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t faces = 0;
    gf2::Gf2Mat d1;  // vertices x edges
    gf2::Gf2Mat d2;  // edges x faces

    long euler() const { return static_cast<long>(vertices) - static_cast<long>(edges) + static_cast<long>(faces); }
};

// Throws IntegrityError when d1 d2 != 0.
void check_complex(const CellComplex& c);
// dim ker(d2^T) - rank(d1^T).
int h1_rank(const CellComplex& c);

struct CoverSpec {
    int g = 0;
    int s = 0;             // punctures, removed with their boundary circles kept
    int branch_count = 0;  // marked points the cover is branched at
    gf2::Gf2Vec phi;            // 2g values on a1, b1, a2, b2, ...
    gf2::Gf2Vec phi_puncture;   // s values, must all be 0
    gf2::Gf2Vec phi_branch;     // branch_count values, must all be 1
};

// Zero on the handle generators, branched at 2l = 2(2g-2+s) points.
CoverSpec standard_cover_spec(int g, int s);
// Throws UsageError for an assignment that is not a valid branched double cover.
void validate_cover_spec(const CoverSpec& spec);

// One vertex polygon with a slit and boundary circle per puncture and a
// marked disc per branch point.
CellComplex build_base_complex(int g, int s, int branch_count);

struct CoverModel {
    CellComplex base;
    CellComplex cover;
    // Transfer chain map: each base cell to the sum of its lifts.
    gf2::Gf2Mat t0, t1, t2;
    bool chain_map_ok = false;
};

CoverModel build_cover_model(const CoverSpec& spec);
CellComplex build_double_cover(const CoverSpec& spec);

// Rank of the kernel of the pushforward H^1(cover) -> H^1(base), computed
// as the cohomology map induced by the transfer.
int pushforward_kernel_rank(const CoverSpec& spec);
int pushforward_kernel_rank(const CoverModel& model);

struct CoverCheck {
    int g = 0;
    int s = 0;
    int branch_count = 0;
    long euler_base = 0;
    long euler_cover = 0;
    int g_eta = 0;           // genus read off the cover's Euler characteristic
    int g_eta_expected = 0;  // 4g-3+s
    int h1_base = 0;
    int h1_base_expected = 0;  // 2g+s-1
    int h1_cover = 0;
    int h1_cover_expected = 0;  // 2 g_eta + 2s - 1
    int kernel = 0;
    int kernel_expected = 0;  // dim LambdaPV
    bool chain_map_ok = false;
    bool pass = false;
};

// Standard branched cover at (g, s). Throws InvalidParameters as surface_data.
CoverCheck cover_check(int g, int s);

}  // namespace pmono
