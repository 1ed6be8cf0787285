#pragma once

// Closed-form counts as exact integers. Terms of the form g-1+s/2 are
// carried as HalfInt so nothing is ever rounded.

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>

#include "pmono/case_id.hpp"

namespace pmono {

using BigInt = boost::multiprecision::cpp_int;

// An element of (1/2)Z, stored as twice its value.
class HalfInt {
public:
    HalfInt() = default;
    static HalfInt from_twice(BigInt twice) { return HalfInt(std::move(twice)); }
    static HalfInt from_int(const BigInt& n) { return HalfInt(2 * n); }

    const BigInt& twice() const { return twice_; }
    bool is_integral() const { return twice_ % 2 == 0; }
    // Throws UsageError when the value is not an integer.
    BigInt to_integer() const;
    double to_double() const;
    // "3/2", "-1/2", "4"
    std::string to_string() const;

    friend HalfInt operator+(const HalfInt& a, const HalfInt& b) { return HalfInt(a.twice_ + b.twice_); }
    friend HalfInt operator-(const HalfInt& a, const HalfInt& b) { return HalfInt(a.twice_ - b.twice_); }
    friend HalfInt operator*(const BigInt& k, const HalfInt& a) { return HalfInt(k * a.twice_); }
    friend bool operator==(const HalfInt& a, const HalfInt& b) { return a.twice_ == b.twice_; }
    friend std::strong_ordering operator<=>(const HalfInt& a, const HalfInt& b) {
        return a.twice_ < b.twice_ ? std::strong_ordering::less
                                   : (a.twice_ == b.twice_ ? std::strong_ordering::equal : std::strong_ordering::greater);
    }

private:
    explicit HalfInt(BigInt twice) : twice_(std::move(twice)) {}
    BigInt twice_ = 0;
};

BigInt pow2(int e);

// Connected components from the main theorems. Throws UsageError unless
// g >= 2 and s >= 1.
BigInt component_count(CaseId c, int g, int s);
// Monodromy orbit counts, written in terms of l = 2g-2+s.
BigInt orbit_count_closed(CaseId c, int g, int s);
// Lower bounds from the topological-invariant census.
BigInt min_component_count(CaseId c, int g, int s);

// The three summands of the GL2R count: w1 != 0, w1 = 0 non-maximal, maximal.
struct GlTerms {
    BigInt w1_nonzero;
    BigInt w1_zero_nonmaximal;
    BigInt maximal;
    BigInt total() const { return w1_nonzero + w1_zero_nonmaximal + maximal; }
    bool operator==(const GlTerms&) const = default;
};
// Uses 2^s (g - 1 + s/2) for the middle term.
GlTerms gl_component_terms(int g, int s);
// Uses 2^s (l/2) for the middle term.
GlTerms gl_orbit_terms(int g, int s);

struct AuxFormulas {
    int g_eta = 0;
    HalfInt toledo_bound;  // g - 1 + s/2
    BigInt sqrt_KD_count;  // 2^{2g+s-1}
    // Rank annotations of the three exact sequences.
    int rank_lambda_m = 0;      // 2g+s-1
    int rank_pv_seq1 = 0;       // (2g+s-1)+(2l-1)
    int rank_prym = 0;          // 2g-2+2l
    int rank_pv_seq2 = 0;       // (2g-2+2l)+s
    int rank_lambda_meta = 0;   // 2 g_eta + 2s - 1
    int rank_pv_seq3 = 0;       // 2g-2+s+2l
};
AuxFormulas auxiliary_formulas(int g, int s);

}  // namespace pmono
