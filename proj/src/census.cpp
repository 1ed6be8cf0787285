#include "pmono/census.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "pmono/errors.hpp"

namespace pmono {

std::string_view to_string(LabelKind k) {
    switch (k) {
        case LabelKind::SlToledo: return "toledo";
        case LabelKind::SlMaximal: return "maximal";
        case LabelKind::GlW1Nonzero: return "w1!=0";
        case LabelKind::GlW1Zero: return "w1=0";
        case LabelKind::GlMaximal: return "maximal";
        case LabelKind::PglW1Nonzero: return "w1!=0";
        case LabelKind::PglW1Zero: return "w1=0";
    }
    return "?";
}

namespace {

std::string bits_string(std::uint64_t v, int n) {
    std::string out;
    for (int i = 0; i < n; ++i) out += ((v >> i) & 1U) ? '1' : '0';
    return out.empty() ? "-" : out;
}

void check_params(int g, int s) {
    if (g < 2 || s < 1) throw UsageError("census needs g >= 2 and s >= 1");
    if (2 * g + 2 * s > 60) throw UsageError("census parameters too large");
}

// Mixed-radix code of a label, injective on well-formed labels for fixed
// (g, s). Used only to test distinctness.
class LabelCoder {
public:
    LabelCoder(int g, int s) : g_(g), s_(s), l_(2 * g - 2 + s) {
        const std::uint64_t ps = std::uint64_t{1} << s;
        const std::uint64_t big = std::uint64_t{1} << (2 * g + s - 1);
        const std::uint64_t h = std::uint64_t{1} << (2 * g);
        sizes_ = {
            static_cast<std::uint64_t>(2 * l_ + 1) * ps,  // 2*tau + 2L ranges over [0, 4L]
            2 * big,
            big * ps,
            ps * static_cast<std::uint64_t>(l_),
            big,
            2 * ps * h,
            2 * ps * static_cast<std::uint64_t>(l_),
        };
        std::uint64_t acc = 0;
        for (std::uint64_t sz : sizes_) {
            offsets_.push_back(acc);
            acc += sz;
        }
        total_ = acc;
    }

    std::uint64_t total() const { return total_; }

    std::uint64_t code(const StratumLabel& lab) const {
        const std::uint64_t ps = std::uint64_t{1} << s_;
        const std::uint64_t h = std::uint64_t{1} << (2 * g_);
        std::uint64_t local = 0;
        switch (lab.kind) {
            case LabelKind::SlToledo: {
                const BigInt shifted = lab.toledo.twice() + l_;  // 2*tau + 2L with 2L = l
                local = shifted.convert_to<std::uint64_t>() * ps + lab.bits;
                break;
            }
            case LabelKind::SlMaximal: local = (lab.sign > 0 ? 1 : 0) * (sizes_[1] / 2) + lab.index; break;
            case LabelKind::GlW1Nonzero: local = lab.w1 * ps + lab.bits; break;
            case LabelKind::GlW1Zero: local = lab.bits * static_cast<std::uint64_t>(l_) + lab.index; break;
            case LabelKind::GlMaximal: local = lab.index; break;
            case LabelKind::PglW1Nonzero:
                local = (static_cast<std::uint64_t>(lab.degree_class) * ps + lab.bits) * h + lab.w1;
                break;
            case LabelKind::PglW1Zero:
                local = (static_cast<std::uint64_t>(lab.degree_class) * ps + lab.bits) * l_ + lab.index;
                break;
        }
        const auto k = static_cast<std::size_t>(lab.kind);
        if (local >= sizes_[k]) throw IntegrityError("census label outside its code range: " + lab.to_string());
        return offsets_[k] + local;
    }

private:
    int g_, s_, l_;
    std::vector<std::uint64_t> sizes_;
    std::vector<std::uint64_t> offsets_;
    std::uint64_t total_ = 0;
};

}  // namespace

std::string StratumLabel::to_string() const {
    std::string out = std::string(pmono::to_string(case_id)) + ":" + std::string(pmono::to_string(kind));
    switch (kind) {
        case LabelKind::SlToledo:
            return out + " tau=" + toledo.to_string() + " par=" + bits_string(bits, 64 - std::countl_zero(bits | 1));
        case LabelKind::SlMaximal:
            return out + " sign=" + (sign > 0 ? "+" : "-") + " sqrt=" + std::to_string(index);
        case LabelKind::GlW1Nonzero:
            return out + " w1=" + std::to_string(w1) + " w2=" + std::to_string(bits);
        case LabelKind::GlW1Zero:
            return out + " weights=" + std::to_string(bits) + " pardeg=" + HalfInt::from_twice(index).to_string();
        case LabelKind::GlMaximal: return out + " sqrt=" + std::to_string(index);
        case LabelKind::PglW1Nonzero:
            return out + " d=" + (degree_class ? "1/2" : "0") + " a=" + std::to_string(bits) + " w1=" + std::to_string(w1);
        case LabelKind::PglW1Zero:
            return out + " d=" + (degree_class ? "1/2" : "0") + " a=" + std::to_string(bits) + " m=" + std::to_string(index);
    }
    return out;
}

void for_each_label(CaseId c, int g, int s, const std::function<void(const StratumLabel&)>& visit) {
    check_params(g, s);
    const BigInt expected = min_component_count(c, g, s);
    if (expected > BigInt(kCensusCap)) throw UsageError("census for g=" + std::to_string(g) + ", s=" + std::to_string(s) +
                                                        " exceeds the enumeration cap");
    const int l = 2 * g - 2 + s;
    const std::uint64_t ps = std::uint64_t{1} << s;
    const std::uint64_t big = std::uint64_t{1} << (2 * g + s - 1);
    const std::uint64_t h = std::uint64_t{1} << (2 * g);

    StratumLabel lab;
    lab.case_id = c;
    switch (c) {
        case CaseId::SL2R: {
            // |tau| < L = l/2, spacing 1 starting from -L + 1.
            lab.kind = LabelKind::SlToledo;
            for (int k = 1; k <= l - 1; ++k) {
                lab.toledo = HalfInt::from_twice(BigInt(2 * k - l));
                for (std::uint64_t b = 0; b < ps; ++b) {
                    lab.bits = b;
                    visit(lab);
                }
            }
            lab = StratumLabel{};
            lab.case_id = c;
            lab.kind = LabelKind::SlMaximal;
            for (int sign : {-1, 1}) {
                lab.sign = sign;
                for (std::uint64_t i = 0; i < big; ++i) {
                    lab.index = i;
                    visit(lab);
                }
            }
            break;
        }
        case CaseId::GL2R: {
            lab.kind = LabelKind::GlW1Nonzero;
            for (std::uint64_t w1 = 1; w1 < big; ++w1) {
                lab.w1 = w1;
                for (std::uint64_t w2 = 0; w2 < ps; ++w2) {
                    lab.bits = w2;
                    visit(lab);
                }
            }
            lab.w1 = 0;
            lab.kind = LabelKind::GlW1Zero;
            // Twice the parabolic degree has the parity of the weight count.
            for (std::uint64_t om = 0; om < ps; ++om) {
                lab.bits = om;
                for (int p2 = std::popcount(om) & 1; p2 < l; p2 += 2) {
                    lab.index = static_cast<std::uint64_t>(p2);
                    visit(lab);
                }
            }
            lab.bits = 0;
            lab.kind = LabelKind::GlMaximal;
            for (std::uint64_t i = 0; i < big; ++i) {
                lab.index = i;
                visit(lab);
            }
            break;
        }
        case CaseId::PGL2R: {
            for (int d : {0, 1}) {
                lab.degree_class = d;
                for (std::uint64_t a = 0; a < ps; ++a) {
                    if ((std::popcount(a) & 1) != d) continue;
                    lab.bits = a;
                    lab.index = 0;
                    lab.kind = LabelKind::PglW1Nonzero;
                    for (std::uint64_t w1 = 1; w1 < h; ++w1) {
                        lab.w1 = w1;
                        visit(lab);
                    }
                    lab.w1 = 0;
                    lab.kind = LabelKind::PglW1Zero;
                    for (int m = 0; m < l; ++m) {
                        lab.index = static_cast<std::uint64_t>(m);
                        visit(lab);
                    }
                }
            }
            break;
        }
    }
}

std::vector<StratumLabel> census(CaseId c, int g, int s) {
    std::vector<StratumLabel> out;
    for_each_label(c, g, s, [&](const StratumLabel& lab) { out.push_back(lab); });
    return out;
}

CensusResult census_summary(CaseId c, int g, int s) {
    CensusResult res;
    res.case_id = c;
    res.g = g;
    res.s = s;
    res.target = min_component_count(c, g, s);

    const LabelCoder coder(g, s);
    std::vector<std::uint64_t> seen((coder.total() + 63) / 64);
    std::map<LabelKind, std::uint64_t> kinds;
    bool distinct = true;
    for_each_label(c, g, s, [&](const StratumLabel& lab) {
        const std::uint64_t code = coder.code(lab);
        std::uint64_t& word = seen[code >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (code & 63);
        if (word & bit) distinct = false;
        word |= bit;
        ++res.count;
        ++kinds[lab.kind];
    });
    res.distinct = distinct;
    res.per_kind.assign(kinds.begin(), kinds.end());

    if (c == CaseId::PGL2R) {
        // The w1 != 0 stratum counted over all 2^s puncture classes.
        const BigInt prose = 2 * (pow2(s) * (pow2(2 * g) - 1) + pow2(s - 1) * (2 * g - 2 + s));
        res.audit.push_back({"two-part tally with 2^s(2^{2g}-1) for w1!=0", prose});
        res.audit.push_back({"w1!=0 per degree class", pow2(s - 1) * (pow2(2 * g) - 1)});
        res.audit.push_back({"w1=0 per degree class", pow2(s - 1) * (2 * g - 2 + s)});
    }
    if (c == CaseId::SL2R) res.audit.push_back({"non-maximal Toledo values", BigInt(2 * g - 3 + s)});
    return res;
}

WeightTypeCensus weight_type_census(int s) {
    if (s < 1 || s > 30) throw UsageError("weight_type_census needs 1 <= s <= 30");
    WeightTypeCensus out;
    out.s = s;
    out.rows.resize(static_cast<std::size_t>(s) + 1);
    for (int j = 0; j <= s; ++j) {
        auto& row = out.rows[static_cast<std::size_t>(j)];
        row.j = j;
        row.j_beta = s + j;
        row.choices_per_assignment = pow2(2 * j) * pow2(s - j);
    }
    // Bit i set means puncture i is of Type 1.
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << s); ++a) ++out.rows[static_cast<std::size_t>(std::popcount(a))].assignments;
    for (auto& row : out.rows) {
        row.total_choices = row.choices_per_assignment * row.assignments;
        out.total_choices += row.total_choices;
    }
    return out;
}

}  // namespace pmono
