#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pmono/cover.hpp"
#include "pmono/errors.hpp"
#include "pmono/lattice.hpp"

using namespace pmono;
using gf2::Gf2Vec;

TEST_CASE("base surfaces") {
    CHECK(h1_rank(build_base_complex(2, 0, 0)) == 4);
    CHECK(h1_rank(build_base_complex(2, 1, 0)) == 4);
    CHECK(h1_rank(build_base_complex(0, 3, 0)) == 2);
    CHECK(h1_rank(build_base_complex(0, 0, 0)) == 0);
    // Filled branch discs do not change the surface.
    CHECK(h1_rank(build_base_complex(2, 1, 6)) == 4);
    for (int g = 0; g <= 4; ++g)
        for (int s = 0; s <= 4; ++s) {
            const auto c = build_base_complex(g, s, 2);
            CHECK(c.euler() == 2 - 2 * g - s);
            CHECK(h1_rank(c) == 2 * g + std::max(s - 1, 0));
        }
}

TEST_CASE("non-complex is rejected") {
    auto c = build_base_complex(1, 1, 0);
    c.d2.set(2, 0, !c.d2.get(2, 0));  // slit edge to the puncture circle
    CHECK_THROWS_AS(h1_rank(c), IntegrityError);
}

TEST_CASE("branched covers at the criterion points") {
    struct Row { int g, s, h1_cover, kernel; };
    for (const Row r : {Row{2, 1, 13, 9}, Row{1, 2, 9, 6}, Row{2, 2, 17, 12}}) {
        const auto chk = cover_check(r.g, r.s);
        CAPTURE(r.g);
        CAPTURE(r.s);
        CHECK(chk.h1_cover == r.h1_cover);
        CHECK(chk.kernel == r.kernel);
        CHECK(chk.g_eta == 4 * r.g - 3 + r.s);
        CHECK(chk.chain_map_ok);
        CHECK(chk.pass);
    }
}

TEST_CASE("cover sweep") {
    for (int g = 0; g <= 4; ++g)
        for (int s = 1; s <= 4; ++s) {
            if (2 * g - 2 + s < 1) continue;
            const auto chk = cover_check(g, s);
            CAPTURE(g);
            CAPTURE(s);
            CHECK(chk.pass);
        }
}

TEST_CASE("handle monodromy does not change the ranks") {
    auto spec = standard_cover_spec(2, 1);
    spec.phi = Gf2Vec::from_string("1011");
    const auto m = build_cover_model(spec);
    CHECK(m.chain_map_ok);
    CHECK(h1_rank(m.cover) == 13);
    CHECK(pushforward_kernel_rank(m) == 9);
}

TEST_CASE("unbranched cover of a closed genus 2 surface") {
    CoverSpec spec;
    spec.g = 2;
    spec.phi = Gf2Vec::from_string("1000");
    const auto m = build_cover_model(spec);
    CHECK(m.cover.euler() == -4);  // genus 3
    CHECK(h1_rank(m.cover) == 6);
    // Over GF(2) the unbranched pushforward misses the class of the cover
    // itself, so the kernel is one larger than 6 - 4.
    CHECK(pushforward_kernel_rank(m) == 3);
}

TEST_CASE("invalid assignments") {
    auto spec = standard_cover_spec(2, 1);
    spec.phi_puncture.set(0, true);
    CHECK_THROWS_AS(build_cover_model(spec), UsageError);
    spec = standard_cover_spec(2, 1);
    spec.phi_branch.set(0, false);
    CHECK_THROWS_AS(build_cover_model(spec), UsageError);
    spec = standard_cover_spec(2, 1);
    spec.branch_count = 5;
    spec.phi_branch = Gf2Vec::ones(5);
    CHECK_THROWS_AS(build_cover_model(spec), UsageError);
    CoverSpec trivial;
    trivial.g = 2;
    trivial.phi = Gf2Vec(4);
    CHECK_THROWS_AS(build_cover_model(trivial), UsageError);
}
