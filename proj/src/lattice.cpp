#include "pmono/lattice.hpp"

#include <array>
#include <utility>

#include "pmono/errors.hpp"

namespace pmono {

using gf2::Gf2Mat;
using gf2::Gf2Vec;

SurfaceData surface_data(int g, int s) {
    if (s < 1) throw InvalidParameters("puncture count s must be at least 1");
    if (g < 0) throw InvalidParameters("genus g must be non-negative");
    const int l = 2 * g - 2 + s;
    if (l < 1)
        throw InvalidParameters("l = 2g-2+s = " + std::to_string(l) + " leaves no branch points");
    SurfaceData sd;
    sd.g = g;
    sd.s = s;
    sd.l = l;
    sd.branch_count = 2 * l;
    sd.g_eta = 4 * g - 3 + s;
    sd.b_o = Gf2Vec::ones(static_cast<std::size_t>(2 * l));
    sd.x_o = Gf2Vec::ones(static_cast<std::size_t>(s));
    return sd;
}

namespace {

constexpr std::array<std::pair<LatticeKind, std::string_view>, 6> kKindNames{{
    {LatticeKind::LambdaX, "LambdaX"},
    {LatticeKind::LambdaM, "LambdaM"},
    {LatticeKind::ZBev, "ZBev"},
    {LatticeKind::LambdaPV, "LambdaPV"},
    {LatticeKind::LambdaMeta, "LambdaMeta"},
    {LatticeKind::PGLQuotient, "PGLQuotient"},
}};

struct BlockSpec {
    const char* name;
    BlockRole role;
};

std::size_t role_width(BlockRole role, const SurfaceData& sd) {
    switch (role) {
        case BlockRole::Puncture:
        case BlockRole::DualPuncture:
            return static_cast<std::size_t>(sd.s - 1);
        case BlockRole::Base:
        case BlockRole::DualBase:
            return static_cast<std::size_t>(2 * sd.g);
        case BlockRole::Branch:
            return static_cast<std::size_t>(sd.branch_count);
    }
    return 0;
}

std::vector<BlockSpec> layout(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::LambdaX:
            return {{"x", BlockRole::Base}};
        case LatticeKind::LambdaM:
            return {{"w", BlockRole::Puncture}, {"x", BlockRole::Base}};
        case LatticeKind::ZBev:
            return {{"y", BlockRole::Branch}};
        case LatticeKind::LambdaPV:
            return {{"w", BlockRole::Puncture}, {"x", BlockRole::Base}, {"y", BlockRole::Branch}};
        case LatticeKind::LambdaMeta:
            return {{"w", BlockRole::Puncture},
                    {"x''", BlockRole::Base},
                    {"y", BlockRole::Branch},
                    {"z''", BlockRole::DualBase},
                    {"z'", BlockRole::DualPuncture}};
        case LatticeKind::PGLQuotient:
            return {{"y", BlockRole::Branch}, {"z''", BlockRole::DualBase}, {"z'", BlockRole::DualPuncture}};
    }
    throw UsageError("unknown lattice kind");
}

}  // namespace

std::string_view to_string(LatticeKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    throw UsageError("unknown lattice kind");
}

LatticeKind lattice_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    throw UsageError("unknown lattice kind '" + std::string(name) + "'");
}

bool LatticeDecomp::has_block(BlockRole role) const {
    for (const auto& b : blocks)
        if (b.role == role) return true;
    return false;
}

const Block& LatticeDecomp::block(BlockRole role) const {
    for (const auto& b : blocks)
        if (b.role == role) return b;
    throw UsageError("lattice " + std::string(to_string(kind)) + " has no block of the requested role");
}

bool LatticeDecomp::contains(const Gf2Vec& v) const {
    if (v.size() != storage_dim) return false;
    for (const auto& b : blocks)
        if (b.even_parity && v.slice(b.offset, b.dim).weight() % 2 != 0) return false;
    return true;
}

Gf2Mat LatticeDecomp::basis() const {
    std::vector<Gf2Vec> cols;
    for (const auto& b : blocks) {
        if (!b.even_parity) {
            for (std::size_t i = 0; i < b.dim; ++i) cols.push_back(Gf2Vec::unit(storage_dim, b.offset + i));
            continue;
        }
        // Even-weight block: b_i + b_{i+1}.
        for (std::size_t i = 0; i + 1 < b.dim; ++i) {
            Gf2Vec v = Gf2Vec::unit(storage_dim, b.offset + i);
            v.flip(b.offset + i + 1);
            cols.push_back(std::move(v));
        }
    }
    return Gf2Mat::from_columns(cols, storage_dim);
}

Gf2Mat symplectic_gram(int g) {
    const std::size_t n = static_cast<std::size_t>(2 * g);
    Gf2Mat j(n, n);
    for (std::size_t i = 0; i < n; i += 2) {
        j.set(i, i + 1, true);
        j.set(i + 1, i, true);
    }
    return j;
}

LatticeDecomp build_lattice(LatticeKind kind, const SurfaceData& sd) {
    LatticeDecomp ld;
    ld.kind = kind;
    std::size_t offset = 0;
    for (const auto& spec : layout(kind)) {
        Block b;
        b.name = spec.name;
        b.role = spec.role;
        b.offset = offset;
        b.dim = role_width(spec.role, sd);
        b.even_parity = spec.role == BlockRole::Branch;
        offset += b.dim;
        ld.total_dim += b.even_parity ? b.dim - 1 : b.dim;
        ld.blocks.push_back(std::move(b));
    }
    ld.storage_dim = offset;

    if (kind == LatticeKind::PGLQuotient) return ld;

    Gf2Mat q(ld.storage_dim, ld.storage_dim);
    const Gf2Mat j = symplectic_gram(sd.g);
    if (kind == LatticeKind::LambdaMeta) {
        const Block& x = ld.block(BlockRole::Base);
        const Block& z = ld.block(BlockRole::DualBase);
        q.set_block(x.offset, z.offset, j);
        q.set_block(z.offset, x.offset, j);
    } else if (ld.has_block(BlockRole::Base) && !ld.has_block(BlockRole::Branch)) {
        // LambdaX and LambdaM carry the surface intersection form.
        const Block& x = ld.block(BlockRole::Base);
        q.set_block(x.offset, x.offset, j);
    }
    if (ld.has_block(BlockRole::Branch)) {
        const Block& y = ld.block(BlockRole::Branch);
        q.set_block(y.offset, y.offset, Gf2Mat::identity(y.dim));
    }
    ld.gram = std::move(q);
    return ld;
}

bool eval_form(const LatticeDecomp& ld, const Gf2Vec& u, const Gf2Vec& v) {
    if (u.size() != ld.storage_dim || v.size() != ld.storage_dim)
        throw UsageError("eval_form: vector width does not match the lattice");
    if (!ld.gram) throw UsageError("eval_form: lattice " + std::string(to_string(ld.kind)) + " has no form");
    return gf2::bilinear(*ld.gram, u, v);
}

Gf2Vec epsilon(const SurfaceData& sd, const Gf2Vec& v) {
    const LatticeDecomp pv = build_lattice(LatticeKind::LambdaPV, sd);
    if (v.size() != pv.storage_dim) throw UsageError("epsilon: expected a LambdaPV vector");
    const Block& y = pv.block(BlockRole::Branch);
    return v.slice(y.offset, y.dim);
}

Gf2Vec branch_pair(const SurfaceData& sd, int i, int j) {
    if (i < 1 || j < 1 || i > sd.branch_count || j > sd.branch_count || i == j)
        throw UsageError("branch indices must be distinct and in 1.." + std::to_string(sd.branch_count));
    Gf2Vec v(static_cast<std::size_t>(sd.branch_count));
    v.set(static_cast<std::size_t>(i - 1), true);
    v.set(static_cast<std::size_t>(j - 1), true);
    return v;
}

namespace {

// 0 -> L --f--> M --h--> R -> 0, each space given by a spanning set of
// columns inside its storage coordinates.
ExactnessReport check_sequence(int id, std::string description, const Gf2Mat& left, const Gf2Mat& f,
                               const Gf2Mat& middle, const Gf2Mat& h, const Gf2Mat& right,
                               std::array<std::size_t, 3> expected) {
    ExactnessReport r;
    r.id = id;
    r.description = std::move(description);
    r.rank_left = gf2::rank(left);
    r.rank_middle = gf2::rank(middle);
    r.rank_right = gf2::rank(right);
    r.expected_left = expected[0];
    r.expected_middle = expected[1];
    r.expected_right = expected[2];

    const Gf2Mat image_f = f * left;
    const Gf2Mat image_h = h * middle;
    const std::size_t rank_f = gf2::rank(image_f);
    const std::size_t rank_h = gf2::rank(image_h);
    const bool f_lands = gf2::rank(gf2::hstack(middle, image_f)) == r.rank_middle;
    const bool h_lands = gf2::rank(gf2::hstack(right, image_h)) == r.rank_right;

    r.composition_zero = (h * image_f).is_zero();
    r.injective = f_lands && rank_f == r.rank_left;
    r.surjective = h_lands && rank_h == r.rank_right;
    // ker h has dimension rank_middle - rank_h and contains im f.
    r.exact_middle = r.composition_zero && r.rank_middle - rank_h == rank_f;
    r.rank_additive = r.rank_middle == r.rank_left + r.rank_right && r.rank_left == expected[0] &&
                      r.rank_middle == expected[1] && r.rank_right == expected[2];
    r.pass = r.composition_zero && r.injective && r.surjective && r.exact_middle && r.rank_additive;
    return r;
}

}  // namespace

std::vector<ExactnessReport> check_exact_sequences(const SurfaceData& sd) {
    const LatticeDecomp m = build_lattice(LatticeKind::LambdaM, sd);
    const LatticeDecomp pv = build_lattice(LatticeKind::LambdaPV, sd);
    const LatticeDecomp zb = build_lattice(LatticeKind::ZBev, sd);
    const LatticeDecomp meta = build_lattice(LatticeKind::LambdaMeta, sd);

    const std::size_t g2 = static_cast<std::size_t>(2 * sd.g);
    const std::size_t s = static_cast<std::size_t>(sd.s);
    const std::size_t l = static_cast<std::size_t>(sd.l);
    const std::size_t gm = static_cast<std::size_t>(2 * sd.g_eta) + 2 * s - 1;
    const Block& pv_w = pv.block(BlockRole::Puncture);
    const Block& pv_x = pv.block(BlockRole::Base);
    const Block& pv_y = pv.block(BlockRole::Branch);

    std::vector<ExactnessReport> out;

    // LambdaM -> LambdaPV as the (w, x) sub-block, then epsilon.
    {
        Gf2Mat incl(pv.storage_dim, m.storage_dim);
        incl.set_block(0, 0, Gf2Mat::identity(m.storage_dim));
        Gf2Mat eps(zb.storage_dim, pv.storage_dim);
        eps.set_block(0, pv_y.offset, Gf2Mat::identity(pv_y.dim));
        out.push_back(check_sequence(1, "LambdaM -> LambdaPV -> ZBev", m.basis(), incl, pv.basis(), eps,
                                     zb.basis(), {g2 + s - 1, (g2 + s - 1) + (2 * l - 1), 2 * l - 1}));
    }

    // The Prym part is (0, x, y) with y in ZBev and y_{2l} = 0; the quotient
    // map reads the puncture block together with y_{2l}.
    {
        std::vector<Gf2Vec> prym;
        for (std::size_t i = 0; i < pv_x.dim; ++i) prym.push_back(Gf2Vec::unit(pv.storage_dim, pv_x.offset + i));
        for (std::size_t i = 0; i + 2 < pv_y.dim; ++i) {
            Gf2Vec v = Gf2Vec::unit(pv.storage_dim, pv_y.offset + i);
            v.flip(pv_y.offset + i + 1);
            prym.push_back(std::move(v));
        }
        const Gf2Mat left = Gf2Mat::from_columns(prym, pv.storage_dim);
        Gf2Mat q(s, pv.storage_dim);
        q.set_block(0, pv_w.offset, Gf2Mat::identity(pv_w.dim));
        q.set(s - 1, pv_y.offset + pv_y.dim - 1, true);
        out.push_back(check_sequence(2, "LambdaP -> LambdaPV -> Z2^s", left, Gf2Mat::identity(pv.storage_dim),
                                     pv.basis(), q, Gf2Mat::identity(s),
                                     {g2 - 2 + 2 * l, (g2 - 2 + 2 * l) + s, s}));
    }

    // LambdaM -> LambdaMeta as (w, x''), then (w, x'', y, z'', z') -> (z', z'', y).
    {
        const Block& w = meta.block(BlockRole::Puncture);
        const Block& y = meta.block(BlockRole::Branch);
        const Block& zb2 = meta.block(BlockRole::DualBase);
        const Block& zp = meta.block(BlockRole::DualPuncture);
        Gf2Mat incl(meta.storage_dim, m.storage_dim);
        incl.set_block(w.offset, 0, Gf2Mat::identity(m.storage_dim));
        Gf2Mat proj(pv.storage_dim, meta.storage_dim);
        proj.set_block(pv_w.offset, zp.offset, Gf2Mat::identity(zp.dim));
        proj.set_block(pv_x.offset, zb2.offset, Gf2Mat::identity(zb2.dim));
        proj.set_block(pv_y.offset, y.offset, Gf2Mat::identity(y.dim));
        out.push_back(check_sequence(3, "LambdaM -> LambdaMeta -> LambdaPV", m.basis(), incl, meta.basis(), proj,
                                     pv.basis(), {g2 + s - 1, gm, g2 - 2 + s + 2 * l}));
    }
    return out;
}

}  // namespace pmono
