#pragma once

// Surface parameters and the Z2-lattices built from them.
//
// Fixed coordinate orders (offsets are cumulative in this order):
//   LambdaX      x: a1,b1,a2,b2,...,ag,bg                 (2g)
//   LambdaM      w (s-1), x (2g)
//   ZBev         y: b1..b_{2l}, stored in full, even weight (2l)
//   LambdaPV     w (s-1), x (2g), y (2l)
//   LambdaMeta   w (s-1), x'' (2g), y (2l), z'' (2g), z' (s-1)
//   PGLQuotient  y (2l), z'' (2g), z' (s-1)
// The y block always carries one parity constraint, so a lattice's rank is
// its storage width minus one whenever it contains y.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmono/gf2.hpp"

namespace pmono {

struct SurfaceData {
    int g = 0;
    int s = 0;
    int l = 0;             // 2g - 2 + s
    int branch_count = 0;  // 2l
    int g_eta = 0;         // 4g - 3 + s
    gf2::Gf2Vec b_o;       // b1 + ... + b_{2l}
    gf2::Gf2Vec x_o;       // x1 + ... + xs
};

// Throws InvalidParameters unless s >= 1, g >= 0 and l >= 1.
SurfaceData surface_data(int g, int s);

enum class LatticeKind { LambdaX, LambdaM, ZBev, LambdaPV, LambdaMeta, PGLQuotient };

std::string_view to_string(LatticeKind kind);
LatticeKind lattice_kind_from_string(std::string_view name);

enum class BlockRole {
    Puncture,      // w: Z2^{s-1}
    Base,          // x or x'': LambdaX
    Branch,        // y: ZBev
    DualBase,      // z'': LambdaX
    DualPuncture,  // z': Z2^{s-1}
};

struct Block {
    std::string name;
    BlockRole role;
    std::size_t offset = 0;
    std::size_t dim = 0;  // storage width
    bool even_parity = false;
};

struct LatticeDecomp {
    LatticeKind kind = LatticeKind::LambdaX;
    std::vector<Block> blocks;
    std::size_t storage_dim = 0;
    std::size_t total_dim = 0;  // rank of the lattice
    std::optional<gf2::Gf2Mat> gram;

    bool has_block(BlockRole role) const;
    // Throws UsageError when the lattice has no such block.
    const Block& block(BlockRole role) const;
    // Storage width matches and every parity-constrained block has even weight.
    bool contains(const gf2::Gf2Vec& v) const;
    // storage_dim x total_dim matrix whose columns span the lattice.
    gf2::Gf2Mat basis() const;
};

gf2::Gf2Mat symplectic_gram(int g);

LatticeDecomp build_lattice(LatticeKind kind, const SurfaceData& sd);

// Value of the lattice's bilinear form. Throws UsageError on a width mismatch
// or when the lattice carries no form.
bool eval_form(const LatticeDecomp& ld, const gf2::Gf2Vec& u, const gf2::Gf2Vec& v);

// Branch part of an element of LambdaPV (in LambdaPV storage coordinates).
gf2::Gf2Vec epsilon(const SurfaceData& sd, const gf2::Gf2Vec& v);

// b_i + b_j as a 2l-bit vector, 1-based indices.
gf2::Gf2Vec branch_pair(const SurfaceData& sd, int i, int j);

struct ExactnessReport {
    int id = 0;
    std::string description;
    std::size_t rank_left = 0;
    std::size_t rank_middle = 0;
    std::size_t rank_right = 0;
    std::size_t expected_left = 0;
    std::size_t expected_middle = 0;
    std::size_t expected_right = 0;
    bool composition_zero = false;
    bool injective = false;
    bool exact_middle = false;
    bool surjective = false;
    bool rank_additive = false;
    bool pass = false;
};

std::vector<ExactnessReport> check_exact_sequences(const SurfaceData& sd);

}  // namespace pmono
