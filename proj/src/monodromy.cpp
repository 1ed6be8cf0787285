#include "pmono/monodromy.hpp"

#include <functional>
#include <utility>

#include "pmono/errors.hpp"

namespace pmono {

using gf2::Gf2Mat;
using gf2::Gf2Vec;

namespace {

using LinearMap = std::function<Gf2Vec(const Gf2Vec&)>;

Gf2Mat matrix_of(std::size_t n, const LinearMap& f) {
    std::vector<Gf2Vec> cols;
    cols.reserve(n);
    for (std::size_t k = 0; k < n; ++k) cols.push_back(f(Gf2Vec::unit(n, k)));
    return Gf2Mat::from_columns(cols, n);
}

void check_pair(const SurfaceData& sd, int i, int j) {
    if (i < 1 || j < 1 || i > sd.branch_count || j > sd.branch_count || i == j)
        throw UsageError("branch pair (" + std::to_string(i) + "," + std::to_string(j) +
                         ") must be distinct indices in 1.." + std::to_string(sd.branch_count));
}

// Ordered so that i < j.
std::pair<int, int> sorted(int i, int j) { return i < j ? std::pair{i, j} : std::pair{j, i}; }

}  // namespace

std::string MonodromyGen::label() const {
    switch (kind) {
        case GenKind::Swap:
            return "s(" + std::to_string(i) + "," + std::to_string(j) + ")";
        case GenKind::CompositeA:
            return "A(" + std::to_string(i) + "," + std::to_string(j) + ";" + x.to_string() + ")";
        case GenKind::Transvection:
            return "T(" + c.to_string() + ")";
        case GenKind::Extra:
            return "extra";
    }
    return "?";
}

std::string_view to_string(BoConvention c) { return c == BoConvention::Full ? "full" : "quotient"; }

BoConvention bo_convention_from_string(std::string_view name) {
    if (name == "full") return BoConvention::Full;
    if (name == "quotient") return BoConvention::Quotient;
    throw UsageError("unknown b_o convention '" + std::string(name) + "' (expected full or quotient)");
}

LatticeKind case_lattice(CaseId c) {
    switch (c) {
        case CaseId::SL2R: return LatticeKind::LambdaPV;
        case CaseId::GL2R: return LatticeKind::LambdaMeta;
        case CaseId::PGL2R: return LatticeKind::PGLQuotient;
    }
    throw UsageError("unknown case");
}

MonodromyGen picard_lefschetz(const LatticeDecomp& ld, const Gf2Vec& c) {
    if (c.size() != ld.storage_dim) throw UsageError("picard_lefschetz: vector width does not match the lattice");
    MonodromyGen gen;
    gen.kind = GenKind::Transvection;
    gen.space = ld.kind;
    gen.c = c;
    gen.matrix = matrix_of(ld.storage_dim, [&](const Gf2Vec& v) {
        Gf2Vec out = v;
        if (eval_form(ld, c, v)) out += c;
        return out;
    });
    return gen;
}

MonodromyGen gen_swap(const SurfaceData& sd, const LatticeDecomp& ld, int i, int j) {
    check_pair(sd, i, j);
    const Block& y = ld.block(BlockRole::Branch);
    std::vector<std::size_t> perm(ld.storage_dim);
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::swap(perm[y.offset + static_cast<std::size_t>(i - 1)], perm[y.offset + static_cast<std::size_t>(j - 1)]);
    MonodromyGen gen;
    gen.kind = GenKind::Swap;
    gen.space = ld.kind;
    std::tie(gen.i, gen.j) = sorted(i, j);
    gen.matrix = Gf2Mat::permutation(perm);
    return gen;
}

MonodromyGen gen_A(const SurfaceData& sd, const LatticeDecomp& ld, int i, int j, const Gf2Vec& x) {
    check_pair(sd, i, j);
    if (x.size() != static_cast<std::size_t>(2 * sd.g)) throw UsageError("gen_A: x must be a LambdaX vector");
    const Gf2Mat jx = symplectic_gram(sd.g);
    const std::size_t bi = static_cast<std::size_t>(i - 1);
    const std::size_t bj = static_cast<std::size_t>(j - 1);
    const Block& y = ld.block(BlockRole::Branch);

    LinearMap f;
    switch (ld.kind) {
        case LatticeKind::LambdaMeta: {
            const Block& xb = ld.block(BlockRole::Base);
            const Block& zb = ld.block(BlockRole::DualBase);
            f = [&](const Gf2Vec& v) {
                const bool pair_y = v.get(y.offset + bi) != v.get(y.offset + bj);
                const bool pair_z = gf2::bilinear(jx, x, v.slice(zb.offset, zb.dim));
                Gf2Vec out = v;
                if (pair_y != pair_z) out.assign(xb.offset, v.slice(xb.offset, xb.dim) + x);
                if (pair_z) {
                    out.flip(y.offset + bi);
                    out.flip(y.offset + bj);
                }
                return out;
            };
            break;
        }
        case LatticeKind::LambdaPV: {
            const Block& xb = ld.block(BlockRole::Base);
            f = [&](const Gf2Vec& v) {
                Gf2Vec out = v;
                if (v.get(y.offset + bi) != v.get(y.offset + bj)) out.assign(xb.offset, v.slice(xb.offset, xb.dim) + x);
                return out;
            };
            break;
        }
        case LatticeKind::PGLQuotient: {
            const Block& zb = ld.block(BlockRole::DualBase);
            f = [&](const Gf2Vec& v) {
                Gf2Vec out = v;
                if (gf2::bilinear(jx, x, v.slice(zb.offset, zb.dim))) {
                    out.flip(y.offset + bi);
                    out.flip(y.offset + bj);
                }
                return out;
            };
            break;
        }
        default:
            throw UsageError("gen_A is defined on LambdaMeta, LambdaPV and PGLQuotient only");
    }

    MonodromyGen gen;
    gen.kind = GenKind::CompositeA;
    gen.space = ld.kind;
    std::tie(gen.i, gen.j) = sorted(i, j);
    gen.x = x;
    gen.matrix = matrix_of(ld.storage_dim, f);
    return gen;
}

std::vector<MonodromyGen> generator_set(const GeneratorConfig& cfg, const SurfaceData& sd) {
    if (sd.g < 2 && !cfg.allow_low_genus)
        throw HypothesisViolation("the monodromy description needs genus g >= 2 (got g=" + std::to_string(sd.g) + ")");
    const LatticeDecomp ld = build_lattice(case_lattice(cfg.case_id), sd);
    const int n = sd.branch_count;
    const std::size_t xdim = static_cast<std::size_t>(2 * sd.g);

    std::vector<Gf2Vec> xs;
    if (cfg.x_range == XRange::Basis) {
        for (std::size_t k = 0; k < xdim; ++k) xs.push_back(Gf2Vec::unit(xdim, k));
    } else {
        if (xdim > 20) throw UsageError("x range 'all' is limited to 2g <= 20");
        for (gf2::Word bits = 1; bits < (gf2::Word{1} << xdim); ++bits) xs.push_back(Gf2Vec::from_word(bits, xdim));
    }

    std::vector<MonodromyGen> gens;
    if (cfg.minimal) {
        for (int i = 1; i < n; ++i) gens.push_back(gen_swap(sd, ld, i, i + 1));
        for (const auto& x : xs) gens.push_back(gen_A(sd, ld, 1, 2, x));
    } else {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) gens.push_back(gen_swap(sd, ld, i, j));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (const auto& x : xs) gens.push_back(gen_A(sd, ld, i, j, x));
    }

    if (cfg.extra) {
        const Gf2Mat& m = *cfg.extra;
        if (m.rows() != ld.storage_dim || m.cols() != ld.storage_dim)
            throw UsageError("extra generator must be " + std::to_string(ld.storage_dim) + "x" +
                             std::to_string(ld.storage_dim) + " for " + std::string(to_string(ld.kind)));
        if (!gf2::is_invertible(m)) throw UsageError("extra generator is singular");
        const Gf2Mat image = m * ld.basis();
        for (std::size_t c = 0; c < image.cols(); ++c)
            if (!ld.contains(image.column(c))) throw UsageError("extra generator leaves the lattice");
        MonodromyGen gen;
        gen.kind = GenKind::Extra;
        gen.space = ld.kind;
        gen.matrix = m;
        gens.push_back(std::move(gen));
    }
    return gens;
}

IdentityReport verify_generator_identities(const SurfaceData& sd, XRange range) {
    const LatticeDecomp meta = build_lattice(LatticeKind::LambdaMeta, sd);
    const LatticeDecomp pv = build_lattice(LatticeKind::LambdaPV, sd);
    const LatticeDecomp pgl = build_lattice(LatticeKind::PGLQuotient, sd);
    const Block& y = meta.block(BlockRole::Branch);
    const Block& xb = meta.block(BlockRole::Base);
    const Block& zb = meta.block(BlockRole::DualBase);
    const int n = sd.branch_count;
    const std::size_t xdim = static_cast<std::size_t>(2 * sd.g);

    std::vector<Gf2Vec> xs;
    if (range == XRange::Basis || xdim > 12) {
        for (std::size_t k = 0; k < xdim; ++k) xs.push_back(Gf2Vec::unit(xdim, k));
    } else {
        for (gf2::Word bits = 0; bits < (gf2::Word{1} << xdim); ++bits) xs.push_back(Gf2Vec::from_word(bits, xdim));
    }

    // (w, x, y) -> (w, x'', y, 0, 0)
    Gf2Mat incl_pv(meta.storage_dim, pv.storage_dim);
    incl_pv.set_block(0, 0, Gf2Mat::identity(pv.storage_dim));
    // (w, x'', y, z'', z') -> (y, z'', z')
    Gf2Mat proj_pgl(pgl.storage_dim, meta.storage_dim);
    proj_pgl.set_block(0, y.offset, Gf2Mat::identity(pgl.storage_dim));

    // Pointwise-fixed subspace {z'' = 0, y in {0, b_o}}: all w, x'', z' units plus b_o.
    std::vector<Gf2Vec> fixed_basis;
    for (std::size_t k = 0; k < meta.storage_dim; ++k) {
        const bool in_y = k >= y.offset && k < y.offset + y.dim;
        const bool in_z = k >= zb.offset && k < zb.offset + zb.dim;
        if (!in_y && !in_z) fixed_basis.push_back(Gf2Vec::unit(meta.storage_dim, k));
    }
    Gf2Vec bo(meta.storage_dim);
    bo.assign(y.offset, sd.b_o);
    fixed_basis.push_back(bo);

    IdentityCheck swap_tv{"swap equals branch-pair transvection"};
    IdentityCheck involution{"swaps, transvections and A are involutions"};
    IdentityCheck factor{"A equals s_c1 s_c2"};
    IdentityCheck conj{"conjugation law"};
    IdentityCheck form{"Gram form preserved"};
    IdentityCheck restrict_sl{"SL action is the restriction to z = 0"};
    IdentityCheck descent{"PGL action is the descent to (y, z'', z')"};
    IdentityCheck commute{"disjoint swaps commute with A"};
    IdentityCheck fixed{"A fixes z''=0, y in {0, b_o} pointwise"};
    IdentityCheck invertible{"generators invertible"};

    auto tally = [](IdentityCheck& c, bool ok) {
        ++c.checked;
        if (!ok) ++c.failures;
    };
    auto preserves = [](const LatticeDecomp& ld, const Gf2Mat& g) {
        return g.transpose() * *ld.gram * g == *ld.gram;
    };

    // Swap matrices on each space, indexed by the 0-based pair rank.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    std::vector<MonodromyGen> swaps_meta;
    for (auto [i, j] : pairs) {
        const MonodromyGen s = gen_swap(sd, meta, i, j);
        const MonodromyGen s_pv = gen_swap(sd, pv, i, j);
        const MonodromyGen s_pgl = gen_swap(sd, pgl, i, j);
        Gf2Vec c(meta.storage_dim);
        c.assign(y.offset, branch_pair(sd, i, j));
        const MonodromyGen t = picard_lefschetz(meta, c);
        tally(swap_tv, s.matrix == t.matrix);
        tally(involution, (s.matrix * s.matrix).is_identity());
        tally(involution, (t.matrix * t.matrix).is_identity());
        tally(form, preserves(meta, s.matrix));
        tally(form, preserves(pv, s_pv.matrix));
        tally(restrict_sl, s.matrix * incl_pv == incl_pv * s_pv.matrix);
        tally(descent, proj_pgl * s.matrix == s_pgl.matrix * proj_pgl);
        tally(invertible, gf2::is_invertible(s.matrix));
        swaps_meta.push_back(s);
    }

    auto transposed = [](int k, int a, int b) { return k == a ? b : (k == b ? a : k); };

    for (auto [i, j] : pairs) {
        for (const auto& x : xs) {
            const MonodromyGen a = gen_A(sd, meta, i, j, x);
            const MonodromyGen a_pv = gen_A(sd, pv, i, j, x);
            const MonodromyGen a_pgl = gen_A(sd, pgl, i, j, x);

            Gf2Vec c1(meta.storage_dim);
            c1.assign(y.offset, branch_pair(sd, i, j));
            Gf2Vec c2 = c1;
            c2.assign(xb.offset, x);
            tally(factor, a.matrix == picard_lefschetz(meta, c1).matrix * picard_lefschetz(meta, c2).matrix);
            tally(involution, (a.matrix * a.matrix).is_identity());
            tally(form, preserves(meta, a.matrix));
            tally(form, preserves(pv, a_pv.matrix));
            tally(restrict_sl, a.matrix * incl_pv == incl_pv * a_pv.matrix);
            tally(descent, proj_pgl * a.matrix == a_pgl.matrix * proj_pgl);
            tally(invertible, gf2::is_invertible(a.matrix));
            bool fixes = true;
            for (const auto& v : fixed_basis) fixes = fixes && a.matrix * v == v;
            tally(fixed, fixes);

            for (std::size_t p = 0; p < pairs.size(); ++p) {
                const auto [k, l] = pairs[p];
                const Gf2Mat& s = swaps_meta[p].matrix;
                const MonodromyGen moved = gen_A(sd, meta, transposed(i, k, l), transposed(j, k, l), x);
                tally(conj, s * a.matrix * s == moved.matrix);
                if (k != i && k != j && l != i && l != j) tally(commute, s * a.matrix == a.matrix * s);
            }
        }
    }

    IdentityReport report;
    report.checks = {swap_tv, involution, factor, conj, form, restrict_sl, descent, commute, fixed, invertible};
    report.pass = true;
    for (const auto& c : report.checks) report.pass = report.pass && c.failures == 0;
    return report;
}

}  // namespace pmono
