#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "pmono/census.hpp"
#include "pmono/errors.hpp"

using namespace pmono;

TEST_CASE("spot counts") {
    CHECK(census_summary(CaseId::SL2R, 2, 1).count == 36);
    CHECK(census_summary(CaseId::GL2R, 2, 1).count == 49);
    CHECK(census_summary(CaseId::GL2R, 2, 2).count == 164);
    CHECK(census_summary(CaseId::PGL2R, 2, 2).count == 76);
    CHECK(census_summary(CaseId::PGL2R, 2, 1).count == 36);
}

TEST_CASE("label counts equal the minimum component counts") {
    for (int g = 2; g <= 6; ++g)
        for (int s = 1; s <= 6; ++s)
            for (CaseId c : kAllCases) {
                const auto r = census_summary(c, g, s);
                CAPTURE(g);
                CAPTURE(s);
                CHECK(r.distinct);
                CHECK(BigInt(r.count) == r.target);
                CHECK(r.pass());
            }
}

TEST_CASE("SL and PGL censuses have equal size") {
    for (int g = 2; g <= 5; ++g)
        for (int s = 1; s <= 5; ++s)
            CHECK(census_summary(CaseId::SL2R, g, s).count == census_summary(CaseId::PGL2R, g, s).count);
}

TEST_CASE("labels are distinct as strings") {
    for (CaseId c : kAllCases) {
        const auto labels = census(c, 2, 2);
        std::set<std::string> names;
        for (const auto& l : labels) names.insert(l.to_string());
        CHECK(names.size() == labels.size());
    }
}

TEST_CASE("SL Toledo values are strictly inside the bound") {
    const auto labels = census(CaseId::SL2R, 2, 1);
    std::set<std::string> taus;
    for (const auto& l : labels) {
        if (l.kind != LabelKind::SlToledo) continue;
        taus.insert(l.toledo.to_string());
        CHECK(l.toledo < HalfInt::from_twice(3));
        CHECK(l.toledo > HalfInt::from_twice(-3));
    }
    CHECK(taus == std::set<std::string>{"-1/2", "1/2"});
}

TEST_CASE("PGL audit keeps the two-part tally") {
    const auto r = census_summary(CaseId::PGL2R, 2, 1);
    REQUIRE(!r.audit.empty());
    CHECK(r.audit[0].value == 66);
    CHECK(r.count == 36);
}

TEST_CASE("weight type census") {
    const auto w1 = weight_type_census(1);
    REQUIRE(w1.rows.size() == 2);
    CHECK(w1.rows[0].choices_per_assignment == 2);
    CHECK(w1.rows[0].j_beta == 1);
    CHECK(w1.rows[1].choices_per_assignment == 4);
    CHECK(w1.rows[1].j_beta == 2);
    for (int s = 1; s <= 8; ++s) {
        const auto w = weight_type_census(s);
        BigInt six = 1;
        for (int i = 0; i < s; ++i) six *= 6;
        CHECK(w.total_choices == six);
        for (const auto& row : w.rows) {
            CHECK(row.j_beta >= s);
            CHECK(row.j_beta <= 2 * s);
        }
    }
    CHECK(weight_type_census(2).total_choices == 36);
}

TEST_CASE("bad parameters") {
    CHECK_THROWS_AS(census_summary(CaseId::SL2R, 1, 1), UsageError);
    CHECK_THROWS_AS(census_summary(CaseId::GL2R, 2, 0), UsageError);
    CHECK_THROWS_AS(weight_type_census(0), UsageError);
}
