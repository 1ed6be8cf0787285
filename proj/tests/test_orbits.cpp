#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "pmono/errors.hpp"
#include "pmono/orbits.hpp"

using namespace pmono;
using gf2::Gf2Vec;

namespace {

GeneratorConfig config(CaseId c, XRange xr = XRange::Basis) {
    GeneratorConfig cfg;
    cfg.case_id = c;
    cfg.x_range = xr;
    return cfg;
}

// Plain union-find over storage vectors, independent of the compact engine.
std::uint64_t brute_orbits(const StateSpace& sp, const std::vector<MonodromyGen>& gens) {
    const std::uint64_t n = sp.state_count();
    std::vector<std::uint64_t> parent(n);
    for (std::uint64_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::uint64_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::uint64_t c = 0; c < n; ++c) {
        Gf2Vec v = sp.decode(c);
        Gf2Vec lat = v.slice(sp.front_bits, sp.lattice.storage_dim);
        for (const auto& g : gens) {
            Gf2Vec w = v;
            w.assign(sp.front_bits, g.matrix * lat);
            const std::uint64_t d = sp.encode(w);
            parent[find(c)] = find(d);
        }
    }
    std::uint64_t roots = 0;
    for (std::uint64_t i = 0; i < n; ++i) roots += find(i) == i;
    return roots;
}

}  // namespace

TEST_CASE("empty generator set leaves every state fixed") {
    const auto sd = surface_data(2, 1);
    const auto sp = make_state_space(build_lattice(LatticeKind::ZBev, sd), sd, {});
    const auto r = enumerate_orbits(sp, {});
    CHECK(r.total_orbits == sp.state_count());
    CHECK(r.partition_ok);
}

TEST_CASE("branch swaps on the even branch lattice separate by weight") {
    const auto sd = surface_data(2, 1);
    const auto ld = build_lattice(LatticeKind::ZBev, sd);
    const auto sp = make_state_space(ld, sd, {});
    std::vector<MonodromyGen> gens;
    const int n = sd.branch_count;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) gens.push_back(gen_swap(sd, ld, i, j));
    const auto r = enumerate_orbits(sp, gens);
    CHECK(sp.dim == static_cast<std::size_t>(n - 1));
    CHECK(r.total_orbits == static_cast<std::uint64_t>(n / 2 + 1));
}

TEST_CASE("compact engine agrees with a union-find oracle") {
    for (auto [g, s] : {std::pair{2, 1}, std::pair{2, 2}}) {
        const auto sd = surface_data(g, s);
        for (CaseId c : kAllCases) {
            for (BoConvention bo : {BoConvention::Full, BoConvention::Quotient}) {
                for (ExtensionConvention ext : {ExtensionConvention::Product, ExtensionConvention::Shifted}) {
                    if (c != CaseId::SL2R && ext == ExtensionConvention::Shifted) continue;
                    const auto sp = case_space(c, sd, bo, ext);
                    if (sp.dim > 15) continue;
                    auto cfg = config(c);
                    cfg.bo_convention = bo;
                    const auto gens = generator_set(cfg, sd);
                    const auto r = enumerate_orbits(sp, gens);
                    CAPTURE(sp.label());
                    CHECK(sp.dim == case_space_dim(c, sd, bo, ext));
                    CHECK(r.total_orbits == brute_orbits(sp, gens));
                    CHECK(r.partition_ok);
                }
            }
        }
    }
}

TEST_CASE("classify matches enumerate and normal forms cover every orbit") {
    for (auto [g, s] : {std::pair{2, 1}, std::pair{2, 2}}) {
        const auto sd = surface_data(g, s);
        for (CaseId c : kAllCases) {
            const auto sp = case_space(c, sd, BoConvention::Full);
            const auto gens = generator_set(config(c), sd);
            const auto e = enumerate_orbits(sp, gens);
            const auto k = classify_orbits(sp, gens);
            CAPTURE(sp.label());
            CHECK(e.total_orbits == k.total_orbits);
            CHECK(k.uncovered_orbits == 0);
            CHECK(k.normal_form_orbits == k.total_orbits);
            REQUIRE(e.orbits.size() == k.orbits.size());
            for (std::size_t i = 0; i < e.orbits.size(); ++i) {
                CHECK(e.orbits[i].rep == k.orbits[i].rep);
                CHECK(e.orbits[i].size == k.orbits[i].size);
            }
        }
    }
}

TEST_CASE("basis, all and minimal generator sets give the same orbits") {
    const auto sd = surface_data(2, 1);
    for (CaseId c : kAllCases) {
        const auto sp = case_space(c, sd, BoConvention::Full);
        auto basis = config(c, XRange::Basis);
        auto all = config(c, XRange::All);
        auto minimal = config(c, XRange::Basis);
        minimal.minimal = true;
        const auto a = enumerate_orbits(sp, generator_set(basis, sd)).total_orbits;
        CHECK(a == enumerate_orbits(sp, generator_set(all, sd)).total_orbits);
        CHECK(a == enumerate_orbits(sp, generator_set(minimal, sd)).total_orbits);
    }
}

TEST_CASE("worker count does not change the result") {
    const auto sd = surface_data(2, 2);
    const auto sp = case_space(CaseId::GL2R, sd, BoConvention::Full);
    const auto gens = generator_set(config(CaseId::GL2R), sd);
    const auto one = enumerate_orbits(sp, gens, {1});
    const auto four = enumerate_orbits(sp, gens, {4});
    REQUIRE(one.orbits.size() == four.orbits.size());
    for (std::size_t i = 0; i < one.orbits.size(); ++i) {
        CHECK(one.orbits[i].rep == four.orbits[i].rep);
        CHECK(one.orbits[i].size == four.orbits[i].size);
    }
    REQUIRE(one.strata.size() == four.strata.size());
    for (std::size_t i = 0; i < one.strata.size(); ++i) {
        CHECK(one.strata[i].key == four.strata[i].key);
        CHECK(one.strata[i].elements == four.strata[i].elements);
    }
}

TEST_CASE("representatives are orbit minima") {
    const auto sd = surface_data(2, 1);
    const auto sp = case_space(CaseId::PGL2R, sd, BoConvention::Full);
    const auto gens = generator_set(config(CaseId::PGL2R), sd);
    const auto r = enumerate_orbits(sp, gens);
    std::set<std::uint64_t> reps;
    for (const auto& o : r.orbits) reps.insert(o.rep);
    // Each rep's generator images lie in orbits whose rep is not larger.
    for (const auto& o : r.orbits) {
        Gf2Vec v = sp.decode(o.rep);
        for (const auto& g : gens) {
            Gf2Vec w = v;
            w.assign(sp.front_bits, g.matrix * v.slice(sp.front_bits, sp.lattice.storage_dim));
            CHECK(sp.encode(w) >= o.rep);
        }
    }
    CHECK(reps.size() == r.total_orbits);
}

TEST_CASE("counts at genus 2 with one puncture") {
    const auto sd = surface_data(2, 1);
    const auto gl = enumerate_orbits(case_space(CaseId::GL2R, sd, BoConvention::Full),
                                     generator_set(config(CaseId::GL2R), sd));
    CHECK(gl.total_orbits == 64);
    CHECK(gl.closed_total == 49u);
    CHECK(gl.match == MatchStatus::LocalizedMismatch);
    for (const auto& pc : gl.proof_checks) {
        CAPTURE(pc.name);
        CHECK(pc.pass);
    }
    const auto slp = sl_extension_orbits(sd, config(CaseId::SL2R), ExtensionConvention::Product);
    const auto sls = sl_extension_orbits(sd, config(CaseId::SL2R), ExtensionConvention::Shifted);
    CHECK(slp.total_orbits == 68);
    CHECK(sls.total_orbits == 34);
    const auto pgl = pgl_orbits(sd, config(CaseId::PGL2R));
    CHECK(pgl.total_orbits == 38);
    CHECK(pgl.per_class.size() == 2);
    CHECK(pgl.per_class[0] + pgl.per_class[1] == 38);
}

TEST_CASE("oversized spaces are refused by the exhaustive engine") {
    const auto sd = surface_data(4, 3);
    const auto sp = case_space(CaseId::GL2R, sd, BoConvention::Full);
    REQUIRE(sp.dim > static_cast<std::size_t>(kExhaustiveCap));
    CHECK_THROWS_AS(enumerate_orbits(sp, generator_set(config(CaseId::GL2R), sd)), UsageError);
}

TEST_CASE("identification that generators break is reported") {
    const auto sd = surface_data(2, 1);
    const auto sp = case_space(CaseId::GL2R, sd, BoConvention::Quotient);
    // A transvection along a single branch vector does not fix b_o's class.
    auto bad = gf2::Gf2Mat::identity(sp.lattice.storage_dim);
    const std::size_t y = sp.lattice.block(BlockRole::Branch).offset;
    const std::size_t zpp = sp.lattice.block(BlockRole::DualBase).offset;
    bad.set(zpp, y + 3, true);
    CHECK_THROWS_AS(sp.compact_matrix(bad), IntegrityError);
}
