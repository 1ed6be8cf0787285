#pragma once

// Explicit enumeration of topological-invariant labels, one per stratum of
// the minimum-component counts.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pmono/case_id.hpp"
#include "pmono/formulas.hpp"

namespace pmono {

enum class LabelKind {
    SlToledo,     // non-maximal Toledo value, parabolic structure bits
    SlMaximal,    // sign, square-root index
    GlW1Nonzero,  // w1 != 0 in 2g+s-1 bits, w2 in s bits
    GlW1Zero,     // weights, twice the parabolic degree
    GlMaximal,    // square-root index
    PglW1Nonzero, // degree class, puncture bits, w1 != 0 in 2g bits
    PglW1Zero,    // degree class, puncture bits, m
};
std::string_view to_string(LabelKind k);

struct StratumLabel {
    CaseId case_id = CaseId::SL2R;
    LabelKind kind = LabelKind::SlToledo;
    HalfInt toledo;            // SlToledo
    std::uint64_t bits = 0;    // parabolic structure, w2, weights or puncture bits
    std::uint64_t w1 = 0;      // GlW1Nonzero, PglW1Nonzero
    std::uint64_t index = 0;   // sqrt index, twice the parabolic degree, or m
    int sign = 0;              // SlMaximal: +1 or -1
    int degree_class = 0;      // PGL: 0, or 1 for the class 1/2

    std::string to_string() const;
    bool operator==(const StratumLabel&) const = default;
};

struct CensusTally {
    std::string name;
    BigInt value;
};

struct CensusResult {
    CaseId case_id = CaseId::SL2R;
    int g = 0;
    int s = 0;
    std::uint64_t count = 0;
    BigInt target;          // min_component_count
    bool distinct = false;  // labels pairwise distinct
    std::vector<std::pair<LabelKind, std::uint64_t>> per_kind;
    // Intermediate tallies kept for audit; not used for the count.
    std::vector<CensusTally> audit;
    bool pass() const { return distinct && BigInt(count) == target; }
};

// Largest label count enumerated explicitly.
inline constexpr std::uint64_t kCensusCap = std::uint64_t{1} << 28;

// Calls visit once per label. Throws UsageError unless g >= 2 and s >= 1,
// or when the label count exceeds kCensusCap.
void for_each_label(CaseId c, int g, int s, const std::function<void(const StratumLabel&)>& visit);
std::vector<StratumLabel> census(CaseId c, int g, int s);
// Counts and checks distinctness without keeping the labels.
CensusResult census_summary(CaseId c, int g, int s);

struct WeightTypeRow {
    int j = 0;                      // Type 1 punctures
    std::uint64_t assignments = 0;  // enumerated type assignments with this j
    BigInt choices_per_assignment;  // 2^{2j} 2^{s-j}
    int j_beta = 0;                 // s + j
    BigInt total_choices;
};

struct WeightTypeCensus {
    int s = 0;
    std::vector<WeightTypeRow> rows;  // j = 0..s
    BigInt total_choices;
};

// Enumerates all 2^s Type1/Type2 assignments. Throws UsageError unless
// 1 <= s <= 30.
WeightTypeCensus weight_type_census(int s);

}  // namespace pmono
