#pragma once

// Runs the checks behind the command line: per-(g, s, case) reports, the
// verification suite and the parameter sweep.

#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pmono/case_id.hpp"
#include "pmono/gf2.hpp"
#include "pmono/monodromy.hpp"
#include "pmono/orbits.hpp"

namespace pmono {

struct IntRange {
    int lo = 0;
    int hi = 0;
};

// "A..B" or "A". Throws UsageError when malformed or empty.
IntRange parse_range(const std::string& text);

struct RunConfig {
    IntRange g{2, 2};
    IntRange s{1, 1};
    std::vector<CaseId> cases{std::begin(kAllCases), std::end(kAllCases)};
    BoConvention bo = BoConvention::Full;
    ExtensionConvention extension = ExtensionConvention::Product;
    std::optional<gf2::Gf2Mat> involution;
    int workers = 1;
    bool allow_low_genus = false;
    bool timing = false;
};

// Throws HypothesisViolation for g < 2 without allow_low_genus, and
// UsageError for other bad configurations.
void validate_config(const RunConfig& cfg);

// Rows of 0/1 characters, blank lines and lines starting with '#' ignored.
gf2::Gf2Mat read_matrix_file(const std::string& path);

struct VerifyResult {
    nlohmann::json doc;
    bool pass = false;
};

VerifyResult run_verify(const RunConfig& cfg);

// One row per (g, s, case) with formula values, census count and orbit total.
nlohmann::json run_sweep(const RunConfig& cfg);
extern const std::vector<std::string> kSweepColumns;
std::string sweep_csv(const nlohmann::json& rows);

nlohmann::json run_orbits(const RunConfig& cfg);
nlohmann::json run_census(const RunConfig& cfg);
nlohmann::json run_cover_check(const RunConfig& cfg);

// Flat CSV of a JSON array of flat objects, columns in the given order.
std::string rows_csv(const nlohmann::json& rows, const std::vector<std::string>& columns);

}  // namespace pmono
