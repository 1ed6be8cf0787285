#include "pmono/formulas.hpp"

#include "pmono/errors.hpp"

namespace pmono {

namespace {

void require_params(int g, int s) {
    if (g < 2 || s < 1)
        throw UsageError("closed forms need g >= 2 and s >= 1 (got g=" + std::to_string(g) +
                         ", s=" + std::to_string(s) + ")");
}

// 2^{2g+s} + 2^s (2g-3+s), shared by SL2R and PGL2R.
BigInt sl_pgl_component(int g, int s) { return pow2(2 * g + s) + pow2(s) * (2 * g - 3 + s); }

// 2^{2g+s} + 2^s (l-1).
BigInt sl_pgl_orbit(int g, int s) {
    const int l = 2 * g - 2 + s;
    return pow2(2 * g + s) + pow2(s) * (l - 1);
}

}  // namespace

BigInt HalfInt::to_integer() const {
    if (!is_integral()) throw UsageError("half-integer " + to_string() + " is not an integer");
    return twice_ / 2;
}

double HalfInt::to_double() const { return twice_.convert_to<double>() / 2.0; }

std::string HalfInt::to_string() const {
    if (is_integral()) return BigInt(twice_ / 2).str();
    return twice_.str() + "/2";
}

BigInt pow2(int e) {
    if (e < 0) throw UsageError("negative exponent");
    BigInt one = 1;
    return one << e;
}

GlTerms gl_component_terms(int g, int s) {
    require_params(g, s);
    const HalfInt bound = HalfInt::from_int(g - 1) + HalfInt::from_twice(s);
    GlTerms t;
    t.w1_nonzero = pow2(s) * (pow2(2 * g + s - 1) - 1);
    t.w1_zero_nonmaximal = (pow2(s) * bound).to_integer();
    t.maximal = pow2(2 * g + s - 1);
    return t;
}

GlTerms gl_orbit_terms(int g, int s) {
    require_params(g, s);
    const int l = 2 * g - 2 + s;
    GlTerms t;
    t.w1_nonzero = pow2(s) * (pow2(2 * g + s - 1) - 1);
    t.w1_zero_nonmaximal = (pow2(s) * HalfInt::from_twice(l)).to_integer();
    t.maximal = pow2(2 * g + s - 1);
    return t;
}

BigInt component_count(CaseId c, int g, int s) {
    require_params(g, s);
    if (c == CaseId::GL2R) return gl_component_terms(g, s).total();
    return sl_pgl_component(g, s);
}

BigInt orbit_count_closed(CaseId c, int g, int s) {
    require_params(g, s);
    if (c == CaseId::GL2R) return gl_orbit_terms(g, s).total();
    return sl_pgl_orbit(g, s);
}

BigInt min_component_count(CaseId c, int g, int s) {
    require_params(g, s);
    // The lower bounds are stated with the same closed forms as the theorems.
    if (c == CaseId::GL2R) return gl_component_terms(g, s).total();
    return sl_pgl_component(g, s);
}

AuxFormulas auxiliary_formulas(int g, int s) {
    if (s < 1 || g < 0 || 2 * g - 2 + s < 1) throw UsageError("auxiliary formulas need s >= 1 and 2g-2+s >= 1");
    const int l = 2 * g - 2 + s;
    AuxFormulas a;
    a.g_eta = 4 * g - 3 + s;
    a.toledo_bound = HalfInt::from_int(g - 1) + HalfInt::from_twice(s);
    a.sqrt_KD_count = pow2(2 * g + s - 1);
    a.rank_lambda_m = 2 * g + s - 1;
    a.rank_pv_seq1 = (2 * g + s - 1) + (2 * l - 1);
    a.rank_prym = 2 * g - 2 + 2 * l;
    a.rank_pv_seq2 = (2 * g - 2 + 2 * l) + s;
    a.rank_lambda_meta = 2 * a.g_eta + 2 * s - 1;
    a.rank_pv_seq3 = 2 * g - 2 + s + 2 * l;
    return a;
}

}  // namespace pmono
