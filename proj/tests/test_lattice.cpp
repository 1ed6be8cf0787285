#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pmono/errors.hpp"
#include "pmono/lattice.hpp"

using namespace pmono;
using gf2::Gf2Vec;

namespace {

// Number of storage vectors accepted by ld.contains, by enumeration.
std::size_t count_members(const LatticeDecomp& ld) {
    std::size_t n = 0;
    for (gf2::Word bits = 0; bits < (gf2::Word{1} << ld.storage_dim); ++bits)
        if (ld.contains(Gf2Vec::from_word(bits, ld.storage_dim))) ++n;
    return n;
}

Gf2Vec with_block(const LatticeDecomp& ld, BlockRole role, const std::string& bits) {
    Gf2Vec v(ld.storage_dim);
    v.assign(ld.block(role).offset, Gf2Vec::from_string(bits));
    return v;
}

}  // namespace

TEST_CASE("surface data") {
    const SurfaceData a = surface_data(2, 1);
    CHECK(a.l == 3);
    CHECK(a.branch_count == 6);
    CHECK(a.g_eta == 6);
    CHECK(a.b_o.weight() == 6);
    CHECK(a.x_o.weight() == 1);

    const SurfaceData b = surface_data(1, 2);
    CHECK(b.l == 2);
    CHECK(b.branch_count == 4);
    CHECK(b.g_eta == 3);
    CHECK(2 * b.g_eta - 2 == 8 * b.g - 8 + 2 * b.s);

    CHECK_THROWS_AS(surface_data(0, 1), InvalidParameters);
    CHECK_THROWS_AS(surface_data(2, 0), InvalidParameters);
    CHECK_NOTHROW(surface_data(0, 3));
}

TEST_CASE("lattice dimensions") {
    const SurfaceData sd = surface_data(2, 1);
    CHECK(build_lattice(LatticeKind::LambdaMeta, sd).total_dim == 13);
    CHECK(build_lattice(LatticeKind::LambdaPV, sd).total_dim == 9);
    CHECK(build_lattice(LatticeKind::LambdaM, surface_data(3, 2)).total_dim == 7);
    CHECK(build_lattice(LatticeKind::ZBev, sd).total_dim == 5);
    CHECK(build_lattice(LatticeKind::LambdaX, sd).total_dim == 4);
    CHECK(build_lattice(LatticeKind::PGLQuotient, sd).total_dim == 9);
    CHECK_THROWS_AS(lattice_kind_from_string("LambdaQ"), UsageError);
    CHECK(lattice_kind_from_string("ZBev") == LatticeKind::ZBev);
}

TEST_CASE("rank equals log2 of the member count") {
    for (auto [g, s] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
        const SurfaceData sd = surface_data(g, s);
        for (auto kind : {LatticeKind::LambdaM, LatticeKind::ZBev, LatticeKind::LambdaPV, LatticeKind::PGLQuotient}) {
            const LatticeDecomp ld = build_lattice(kind, sd);
            CHECK(count_members(ld) == (std::size_t{1} << ld.total_dim));
            CHECK(gf2::rank(ld.basis()) == ld.total_dim);
        }
    }
}

TEST_CASE("meta rank formula") {
    for (int g = 0; g <= 5; ++g)
        for (int s = 1; s <= 5; ++s) {
            if (2 * g - 2 + s < 1) continue;
            const SurfaceData sd = surface_data(g, s);
            const LatticeDecomp meta = build_lattice(LatticeKind::LambdaMeta, sd);
            CHECK(meta.total_dim == static_cast<std::size_t>(8 * g + 4 * s - 7));
            CHECK(meta.total_dim == static_cast<std::size_t>(2 * sd.g_eta + 2 * s - 1));
        }
}

TEST_CASE("eval_form examples") {
    const SurfaceData sd = surface_data(2, 1);
    const LatticeDecomp meta = build_lattice(LatticeKind::LambdaMeta, sd);

    const Gf2Vec u = with_block(meta, BlockRole::Branch, "110000");
    const Gf2Vec v = with_block(meta, BlockRole::Branch, "011000");
    CHECK(eval_form(meta, u, v) == true);

    Gf2Vec mixed = with_block(meta, BlockRole::Branch, "111100");
    mixed.assign(meta.block(BlockRole::Base).offset, Gf2Vec::from_string("1011"));
    mixed.assign(meta.block(BlockRole::DualBase).offset, Gf2Vec::from_string("0110"));
    CHECK(eval_form(meta, mixed, mixed) == false);

    const Gf2Vec a1 = with_block(meta, BlockRole::Base, "1000");
    const Gf2Vec b1 = with_block(meta, BlockRole::DualBase, "0100");
    CHECK(eval_form(meta, a1, b1) == true);
    CHECK(eval_form(meta, b1, a1) == true);
    CHECK(eval_form(meta, a1, with_block(meta, BlockRole::DualBase, "1000")) == false);

    CHECK_THROWS_AS(eval_form(meta, a1, Gf2Vec(3)), UsageError);
    CHECK_THROWS_AS(eval_form(build_lattice(LatticeKind::PGLQuotient, sd), Gf2Vec(9), Gf2Vec(9)), UsageError);
}

TEST_CASE("eval_form is symmetric and vanishes on the diagonal of ZBev") {
    const SurfaceData sd = surface_data(1, 2);
    const LatticeDecomp zb = build_lattice(LatticeKind::ZBev, sd);
    for (gf2::Word a = 0; a < 16; ++a)
        for (gf2::Word b = 0; b < 16; ++b) {
            const Gf2Vec u = Gf2Vec::from_word(a, 4);
            const Gf2Vec v = Gf2Vec::from_word(b, 4);
            CHECK(eval_form(zb, u, v) == eval_form(zb, v, u));
            if (zb.contains(u)) CHECK(eval_form(zb, u, u) == false);
        }
}

TEST_CASE("epsilon") {
    const SurfaceData sd = surface_data(2, 1);
    const LatticeDecomp pv = build_lattice(LatticeKind::LambdaPV, sd);
    CHECK(epsilon(sd, with_block(pv, BlockRole::Branch, "110000")).to_string() == "110000");
    CHECK(epsilon(sd, with_block(pv, BlockRole::Base, "1101")).is_zero());
    CHECK_THROWS_AS(epsilon(sd, Gf2Vec(4)), UsageError);

    // Every even target is hit by its own inclusion.
    for (gf2::Word t = 0; t < 64; ++t) {
        const Gf2Vec target = Gf2Vec::from_word(t, 6);
        if (target.weight() % 2 != 0) continue;
        CHECK(epsilon(sd, with_block(pv, BlockRole::Branch, target.to_string())) == target);
    }
}

TEST_CASE("exact sequences: instantiated ranks") {
    const auto a = check_exact_sequences(surface_data(2, 1));
    REQUIRE(a.size() == 3);
    CHECK(a[0].rank_left == 4);
    CHECK(a[0].rank_middle == 9);
    CHECK(a[0].rank_right == 5);
    CHECK(a[0].pass);

    const auto b = check_exact_sequences(surface_data(2, 2));
    CHECK(b[2].rank_left == 5);
    CHECK(b[2].rank_middle == 17);
    CHECK(b[2].rank_right == 12);
    CHECK(b[2].pass);

    // l = 5, so 2g-2+2l = 14 and the middle term has rank 15.
    const auto c = check_exact_sequences(surface_data(3, 1));
    CHECK(c[1].rank_left == 14);
    CHECK(c[1].rank_middle == 15);
    CHECK(c[1].rank_right == 1);
    CHECK(c[1].pass);
}

TEST_CASE("exact sequences pass across a grid") {
    for (int g = 0; g <= 5; ++g)
        for (int s = 1; s <= 5; ++s) {
            if (2 * g - 2 + s < 1) continue;
            for (const auto& r : check_exact_sequences(surface_data(g, s))) {
                INFO("g=" << g << " s=" << s << " seq " << r.id);
                CHECK(r.pass);
            }
        }
}
