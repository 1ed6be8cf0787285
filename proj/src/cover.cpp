#include "pmono/cover.hpp"

#include <vector>

#include "pmono/errors.hpp"
#include "pmono/lattice.hpp"

namespace pmono {

using gf2::Gf2Mat;
using gf2::Gf2Vec;

void check_complex(const CellComplex& c) {
    if (c.d1.rows() != c.vertices || c.d1.cols() != c.edges || c.d2.rows() != c.edges || c.d2.cols() != c.faces)
        throw IntegrityError("cell complex boundary shapes do not match its cell counts");
    if (!(c.d1 * c.d2).is_zero()) throw IntegrityError("boundary of a boundary is nonzero");
}

int h1_rank(const CellComplex& c) {
    check_complex(c);
    return static_cast<int>(c.edges - gf2::rank(c.d2) - gf2::rank(c.d1));
}

CoverSpec standard_cover_spec(int g, int s) {
    const SurfaceData sd = surface_data(g, s);
    CoverSpec spec;
    spec.g = g;
    spec.s = s;
    spec.branch_count = sd.branch_count;
    spec.phi = Gf2Vec(2 * static_cast<std::size_t>(g));
    spec.phi_puncture = Gf2Vec(static_cast<std::size_t>(s));
    spec.phi_branch = Gf2Vec::ones(static_cast<std::size_t>(sd.branch_count));
    return spec;
}

void validate_cover_spec(const CoverSpec& spec) {
    if (spec.g < 0 || spec.s < 0 || spec.branch_count < 0) throw UsageError("cover: negative surface data");
    if (spec.phi.size() != 2 * static_cast<std::size_t>(spec.g))
        throw UsageError("cover: handle assignment needs 2g values");
    if (spec.phi_puncture.size() != static_cast<std::size_t>(spec.s))
        throw UsageError("cover: puncture assignment needs s values");
    if (spec.phi_branch.size() != static_cast<std::size_t>(spec.branch_count))
        throw UsageError("cover: branch assignment needs one value per branch point");
    if (!spec.phi_puncture.is_zero()) throw UsageError("cover: punctures must be unbranched");
    if (spec.phi_branch.weight() != spec.phi_branch.size()) throw UsageError("cover: every branch point must ramify");
    // The surface relator maps to the sum of all loop values.
    if (spec.branch_count % 2 != 0) throw UsageError("cover: odd number of branch points");
    if (spec.branch_count == 0 && spec.phi.is_zero()) throw UsageError("cover: trivial assignment gives a disconnected cover");
}

namespace {

// Cells of the base model. Vertex 0 is the polygon vertex, then one vertex
// on each puncture circle and each branch circle.
struct BaseLayout {
    int g, s, nb;
    std::size_t vertices() const { return 1 + std::size_t(s) + std::size_t(nb); }
    std::size_t edges() const { return 2 * std::size_t(g) + 2 * std::size_t(s) + 2 * std::size_t(nb); }
    std::size_t faces() const { return 1 + std::size_t(nb); }
    std::size_t vp(int j) const { return 1 + std::size_t(j); }
    std::size_t vq(int k) const { return 1 + std::size_t(s) + std::size_t(k); }
    std::size_t a(int i) const { return 2 * std::size_t(i); }
    std::size_t b(int i) const { return 2 * std::size_t(i) + 1; }
    std::size_t e(int j) const { return 2 * std::size_t(g) + std::size_t(j); }  // v0 -> p_j
    std::size_t d(int j) const { return 2 * std::size_t(g) + std::size_t(s) + std::size_t(j); }  // loop at p_j
    std::size_t f(int k) const { return 2 * std::size_t(g) + 2 * std::size_t(s) + std::size_t(k); }  // v0 -> q_k
    std::size_t beta(int k) const { return 2 * std::size_t(g) + 2 * std::size_t(s) + std::size_t(nb) + std::size_t(k); }
    std::size_t disc(int k) const { return 1 + std::size_t(k); }

    std::size_t tail(std::size_t edge) const {
        if (edge >= beta(0) && nb > 0) return vq(static_cast<int>(edge - beta(0)));
        if (s > 0 && edge >= d(0) && edge < d(0) + std::size_t(s)) return vp(static_cast<int>(edge - d(0)));
        return 0;
    }
    std::size_t head(std::size_t edge) const {
        if (s > 0 && edge >= e(0) && edge < e(0) + std::size_t(s)) return vp(static_cast<int>(edge - e(0)));
        if (nb > 0 && edge >= f(0) && edge < f(0) + std::size_t(nb)) return vq(static_cast<int>(edge - f(0)));
        return tail(edge);
    }

    // Boundary word of the polygon: prod [a_i, b_i] prod e d e^-1 prod f beta f^-1.
    std::vector<std::pair<std::size_t, bool>> polygon() const {
        std::vector<std::pair<std::size_t, bool>> w;
        for (int i = 0; i < g; ++i) {
            w.push_back({a(i), true});
            w.push_back({b(i), true});
            w.push_back({a(i), false});
            w.push_back({b(i), false});
        }
        for (int j = 0; j < s; ++j) {
            w.push_back({e(j), true});
            w.push_back({d(j), true});
            w.push_back({e(j), false});
        }
        for (int k = 0; k < nb; ++k) {
            w.push_back({f(k), true});
            w.push_back({beta(k), true});
            w.push_back({f(k), false});
        }
        return w;
    }
};

Gf2Vec edge_values(const CoverSpec& spec, const BaseLayout& lay) {
    Gf2Vec phi(lay.edges());
    for (int i = 0; i < 2 * spec.g; ++i) phi.set(std::size_t(i), spec.phi.get(std::size_t(i)));
    for (int k = 0; k < spec.branch_count; ++k) phi.set(lay.beta(k), spec.phi_branch.get(std::size_t(k)));
    return phi;
}

}  // namespace

CellComplex build_base_complex(int g, int s, int branch_count) {
    if (g < 0 || s < 0 || branch_count < 0) throw UsageError("base complex: negative surface data");
    const BaseLayout lay{g, s, branch_count};
    CellComplex c;
    c.vertices = lay.vertices();
    c.edges = lay.edges();
    c.faces = lay.faces();
    c.d1 = Gf2Mat(c.vertices, c.edges);
    for (std::size_t e = 0; e < c.edges; ++e) {
        const std::size_t t = lay.tail(e), h = lay.head(e);
        if (t != h) {
            c.d1.set(t, e, true);
            c.d1.set(h, e, true);
        }
    }
    c.d2 = Gf2Mat(c.edges, c.faces);
    for (const auto& [e, fwd] : lay.polygon()) c.d2.set(e, 0, !c.d2.get(e, 0));
    for (int k = 0; k < branch_count; ++k) c.d2.set(lay.beta(k), lay.disc(k), true);
    check_complex(c);
    return c;
}

CoverModel build_cover_model(const CoverSpec& spec) {
    validate_cover_spec(spec);
    const BaseLayout lay{spec.g, spec.s, spec.branch_count};
    CoverModel m;
    m.base = build_base_complex(spec.g, spec.s, spec.branch_count);
    const Gf2Vec phi = edge_values(spec, lay);

    CellComplex& c = m.cover;
    c.vertices = 2 * lay.vertices();
    c.edges = 2 * lay.edges();
    // The polygon lifts to two faces; each branch disc lifts to one.
    c.faces = 2 + std::size_t(spec.branch_count);
    auto lift = [](std::size_t cell, std::size_t sheet) { return 2 * cell + sheet; };

    c.d1 = Gf2Mat(c.vertices, c.edges);
    for (std::size_t e = 0; e < lay.edges(); ++e)
        for (std::size_t t = 0; t < 2; ++t) {
            const std::size_t from = lift(lay.tail(e), t);
            const std::size_t to = lift(lay.head(e), t ^ std::size_t(phi.get(e)));
            const std::size_t ce = lift(e, t);
            if (from != to) {
                c.d1.set(from, ce, true);
                c.d1.set(to, ce, true);
            }
        }

    c.d2 = Gf2Mat(c.edges, c.faces);
    for (std::size_t start = 0; start < 2; ++start) {
        std::size_t t = start;
        for (const auto& [e, fwd] : lay.polygon()) {
            if (fwd) {
                const std::size_t ce = lift(e, t);
                c.d2.set(ce, start, !c.d2.get(ce, start));
                t ^= std::size_t(phi.get(e));
            } else {
                t ^= std::size_t(phi.get(e));
                const std::size_t ce = lift(e, t);
                c.d2.set(ce, start, !c.d2.get(ce, start));
            }
        }
        if (t != start) throw IntegrityError("polygon boundary does not close up on the cover");
    }
    for (int k = 0; k < spec.branch_count; ++k) {
        c.d2.set(lift(lay.beta(k), 0), 2 + std::size_t(k), true);
        c.d2.set(lift(lay.beta(k), 1), 2 + std::size_t(k), true);
    }
    check_complex(c);

    m.t0 = Gf2Mat(c.vertices, m.base.vertices);
    for (std::size_t v = 0; v < m.base.vertices; ++v) {
        m.t0.set(lift(v, 0), v, true);
        m.t0.set(lift(v, 1), v, true);
    }
    m.t1 = Gf2Mat(c.edges, m.base.edges);
    for (std::size_t e = 0; e < m.base.edges; ++e) {
        m.t1.set(lift(e, 0), e, true);
        m.t1.set(lift(e, 1), e, true);
    }
    m.t2 = Gf2Mat(c.faces, m.base.faces);
    m.t2.set(0, 0, true);
    m.t2.set(1, 0, true);
    for (int k = 0; k < spec.branch_count; ++k) m.t2.set(2 + std::size_t(k), lay.disc(k), true);

    m.chain_map_ok = c.d1 * m.t1 == m.t0 * m.base.d1 && c.d2 * m.t2 == m.t1 * m.base.d2;
    return m;
}

CellComplex build_double_cover(const CoverSpec& spec) { return build_cover_model(spec).cover; }

int pushforward_kernel_rank(const CoverModel& m) {
    if (!m.chain_map_ok) throw IntegrityError("transfer is not a chain map");
    // Cocycles and coboundaries of the cover and the base.
    const std::vector<Gf2Vec> z_cov = gf2::kernel_basis(m.cover.d2.transpose());
    const Gf2Mat b_cov = m.cover.d1.transpose();
    const Gf2Mat b_base = m.base.d1.transpose();
    const Gf2Mat tt = m.t1.transpose();

    std::vector<Gf2Vec> images;
    for (const auto& z : z_cov) images.push_back(tt * z);
    const std::size_t rank_b_base = gf2::rank(b_base);
    std::size_t rank_joint = rank_b_base;
    if (!images.empty()) {
        const Gf2Mat img = Gf2Mat::from_columns(images, m.base.edges);
        rank_joint = gf2::rank(gf2::hstack(b_base, img));
    }
    const std::size_t preimage_dim = z_cov.size() - (rank_joint - rank_b_base);
    return static_cast<int>(preimage_dim - gf2::rank(b_cov));
}

int pushforward_kernel_rank(const CoverSpec& spec) { return pushforward_kernel_rank(build_cover_model(spec)); }

CoverCheck cover_check(int g, int s) {
    const SurfaceData sd = surface_data(g, s);
    const CoverModel m = build_cover_model(standard_cover_spec(g, s));
    CoverCheck r;
    r.g = g;
    r.s = s;
    r.branch_count = sd.branch_count;
    r.euler_base = m.base.euler();
    r.euler_cover = m.cover.euler();
    // The cover has 2s punctures: chi = 2 - 2 g_eta - 2s.
    r.g_eta = static_cast<int>((2 - r.euler_cover - 2 * s) / 2);
    r.g_eta_expected = sd.g_eta;
    r.h1_base = h1_rank(m.base);
    r.h1_base_expected = 2 * g + s - 1;
    r.h1_cover = h1_rank(m.cover);
    r.h1_cover_expected = 2 * sd.g_eta + 2 * s - 1;
    r.chain_map_ok = m.chain_map_ok;
    r.kernel = pushforward_kernel_rank(m);
    r.kernel_expected = static_cast<int>(build_lattice(LatticeKind::LambdaPV, sd).total_dim);
    r.pass = r.euler_cover == 2 * r.euler_base - sd.branch_count && r.g_eta == r.g_eta_expected &&
             r.h1_base == r.h1_base_expected && r.h1_cover == r.h1_cover_expected && r.chain_map_ok &&
             r.kernel == r.kernel_expected;
    return r;
}

}  // namespace pmono
