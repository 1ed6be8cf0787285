#include "pmono/verify.hpp"

#include <chrono>
#include <fstream>
#include <limits>
#include <sstream>

#include "pmono/census.hpp"
#include "pmono/cover.hpp"
#include "pmono/errors.hpp"
#include "pmono/formulas.hpp"
#include "pmono/lattice.hpp"

namespace pmono {

using nlohmann::json;

IntRange parse_range(const std::string& text) {
    auto parse_int = [&](const std::string& part) {
        if (part.empty()) throw UsageError("bad range '" + text + "'");
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw UsageError("bad range '" + text + "'");
        }
        if (used != part.size()) throw UsageError("bad range '" + text + "'");
        return v;
    };
    IntRange r;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = parse_int(text);
    } else {
        r.lo = parse_int(text.substr(0, dots));
        r.hi = parse_int(text.substr(dots + 2));
    }
    if (r.lo > r.hi) throw UsageError("empty range '" + text + "'");
    return r;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.g.lo > cfg.g.hi || cfg.s.lo > cfg.s.hi) throw UsageError("empty parameter range");
    if (cfg.cases.empty()) throw UsageError("no case selected");
    if (cfg.workers < 1) throw UsageError("--workers must be at least 1");
    if (cfg.g.lo < 0 || cfg.s.lo < 1) throw InvalidParameters("need g >= 0 and s >= 1");
    if (cfg.g.hi > 40 || cfg.s.hi > 40) throw UsageError("parameter range too large");
    if (cfg.g.lo < 2 && !cfg.allow_low_genus)
        throw HypothesisViolation("genus below 2 is outside the hypotheses; pass --allow-low-genus to run anyway");
    if (cfg.involution && cfg.cases.size() != 1) throw UsageError("--include-involution needs a single --case");
    for (int g = cfg.g.lo; g <= cfg.g.hi; ++g)
        for (int s = cfg.s.lo; s <= cfg.s.hi; ++s) surface_data(g, s);
}

gf2::Gf2Mat read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read matrix file " + path);
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        rows.push_back(line);
    }
    if (rows.empty()) throw UsageError("matrix file " + path + " is empty");
    try {
        return gf2::Gf2Mat::from_strings(rows);
    } catch (const UsageError& e) {
        throw UsageError("matrix file " + path + ": " + e.what());
    }
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json big_json(const BigInt& v) {
    if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min())
        return v.convert_to<std::int64_t>();
    return v.str();
}

// Above this compact dimension the engine runs on adjacent swaps and A_12^x
// only; they generate the same group with far fewer tables.
constexpr std::size_t kMinimalGeneratorsAbove = 20;

GeneratorConfig generator_config(CaseId c, const RunConfig& cfg, BoConvention bo, std::size_t dim) {
    GeneratorConfig gc;
    gc.minimal = dim > kMinimalGeneratorsAbove;
    gc.case_id = c;
    gc.bo_convention = bo;
    gc.extra = cfg.involution;
    gc.allow_low_genus = cfg.allow_low_genus;
    return gc;
}

json orbit_json(const OrbitReport& r) {
    json j;
    j["engine"] = r.engine;
    j["space"] = r.space;
    j["dim"] = r.dim;
    j["state_count"] = r.state_count;
    j["total"] = r.total_orbits;
    j["per_class"] = r.per_class;
    j["closed_total"] = r.closed_total ? json(*r.closed_total) : json(nullptr);
    j["match"] = std::string(to_string(r.match));
    j["mismatch_strata"] = r.mismatch_strata;
    j["partition_ok"] = r.partition_ok;
    if (r.engine == "classify") {
        j["normal_form_orbits"] = r.normal_form_orbits;
        j["uncovered_orbits"] = r.uncovered_orbits;
    }
    json strata = json::array();
    for (const auto& row : r.strata) {
        strata.push_back({{"key", row.key.to_string()},
                          {"orbits", row.orbits},
                          {"elements", row.elements},
                          {"singletons", row.singleton_orbits},
                          {"representative", row.representative}});
    }
    j["strata"] = strata;
    json diff = json::array();
    for (const auto& row : r.discrepancy) {
        diff.push_back({{"region", row.label()},
                        {"predicted", row.predicted ? json(*row.predicted) : json(nullptr)},
                        {"observed", row.observed},
                        {"ambiguous", row.ambiguous}});
    }
    j["discrepancy"] = diff;
    json checks = json::array();
    for (const auto& pc : r.proof_checks)
        checks.push_back({{"name", pc.name}, {"expected", pc.expected}, {"observed", pc.observed}, {"pass", pc.pass}});
    j["proof_checks"] = checks;
    return j;
}

bool same_orbits(const OrbitReport& a, const OrbitReport& b) {
    if (a.total_orbits != b.total_orbits || a.orbits.size() != b.orbits.size() || a.strata.size() != b.strata.size())
        return false;
    for (std::size_t i = 0; i < a.orbits.size(); ++i)
        if (a.orbits[i].rep != b.orbits[i].rep || a.orbits[i].size != b.orbits[i].size) return false;
    for (std::size_t i = 0; i < a.strata.size(); ++i)
        if (!(a.strata[i].key == b.strata[i].key) || a.strata[i].orbits != b.strata[i].orbits ||
            a.strata[i].elements != b.strata[i].elements)
            return false;
    return true;
}

struct CaseOrbits {
    std::optional<OrbitReport> report;
    std::string skipped;  // reason when report is empty
    std::optional<bool> engines_agree;
};

CaseOrbits case_orbits(const SurfaceData& sd, CaseId c, BoConvention bo, ExtensionConvention ext,
                       const RunConfig& cfg, bool cross_check) {
    CaseOrbits out;
    const StateSpace sp = case_space(c, sd, bo, ext);
    const auto gens = generator_set(generator_config(c, cfg, bo, sp.dim), sd);
    const EngineOptions opts{cfg.workers};
    if (sp.dim <= static_cast<std::size_t>(kExhaustiveCap)) {
        out.report = enumerate_orbits(sp, gens, opts);
        if (cross_check) out.engines_agree = same_orbits(*out.report, classify_orbits(sp, gens, opts));
        return out;
    }
    try {
        out.report = classify_orbits(sp, gens, opts);
    } catch (const UsageError&) {
        out.skipped = "over_cap";
    }
    return out;
}

std::vector<std::pair<BoConvention, ExtensionConvention>> conventions(CaseId c) {
    std::vector<std::pair<BoConvention, ExtensionConvention>> out;
    for (BoConvention bo : {BoConvention::Full, BoConvention::Quotient}) {
        out.push_back({bo, ExtensionConvention::Product});
        if (c == CaseId::SL2R) out.push_back({bo, ExtensionConvention::Shifted});
    }
    return out;
}

json formulas_json(CaseId c, int g, int s, bool& ok) {
    const BigInt comp = component_count(c, g, s);
    const BigInt orb = orbit_count_closed(c, g, s);
    const BigInt mn = min_component_count(c, g, s);
    json j{{"component", big_json(comp)}, {"orbit", big_json(orb)}, {"min", big_json(mn)}};
    bool agree = comp == orb && orb == mn;
    if (c == CaseId::GL2R) {
        const GlTerms a = gl_component_terms(g, s), b = gl_orbit_terms(g, s);
        j["terms"] = {{"w1_nonzero", big_json(a.w1_nonzero)},
                      {"w1_zero_nonmaximal", big_json(a.w1_zero_nonmaximal)},
                      {"maximal", big_json(a.maximal)}};
        agree = agree && a == b;
    } else {
        const CaseId other = c == CaseId::SL2R ? CaseId::PGL2R : CaseId::SL2R;
        agree = agree && comp == component_count(other, g, s);
    }
    j["consistent"] = agree;
    ok = agree;
    return j;
}

json census_json(const CensusResult& r) {
    json kinds = json::object();
    for (const auto& [k, n] : r.per_kind) kinds[std::string(to_string(k))] = n;
    json audit = json::array();
    for (const auto& t : r.audit) audit.push_back({{"name", t.name}, {"value", big_json(t.value)}});
    return {{"count", r.count}, {"target", big_json(r.target)}, {"distinct", r.distinct}, {"pass", r.pass()},
            {"per_kind", kinds}, {"audit", audit}};
}

json cover_json(const CoverCheck& c) {
    return {{"ranks",
             {{"h1_base", c.h1_base},
              {"h1_base_expected", c.h1_base_expected},
              {"h1_cover", c.h1_cover},
              {"h1_cover_expected", c.h1_cover_expected},
              {"pushforward_kernel", c.kernel},
              {"pushforward_kernel_expected", c.kernel_expected}}},
            {"euler_base", c.euler_base},
            {"euler_cover", c.euler_cover},
            {"g_eta", c.g_eta},
            {"g_eta_expected", c.g_eta_expected},
            {"chain_map_ok", c.chain_map_ok},
            {"pass", c.pass}};
}

template <class F>
void for_grid(const RunConfig& cfg, F&& f) {
    for (int g = cfg.g.lo; g <= cfg.g.hi; ++g)
        for (int s = cfg.s.lo; s <= cfg.s.hi; ++s) f(g, s);
}

}  // namespace

VerifyResult run_verify(const RunConfig& cfg) {
    validate_config(cfg);
    VerifyResult res;
    res.pass = true;
    json reports = json::array();
    json suite = json::array();

    for_grid(cfg, [&](int g, int s) {
        const SurfaceData sd = surface_data(g, s);
        json entry{{"g", g}, {"s", s}};
        json timing = json::object();

        auto t0 = Clock::now();
        json seqs = json::array();
        bool seq_ok = true;
        for (const auto& rep : check_exact_sequences(sd)) {
            seqs.push_back({{"id", rep.id},
                            {"ranks", {rep.rank_left, rep.rank_middle, rep.rank_right}},
                            {"expected", {rep.expected_left, rep.expected_middle, rep.expected_right}},
                            {"composition_zero", rep.composition_zero},
                            {"rank_additive", rep.rank_additive},
                            {"pass", rep.pass}});
            seq_ok = seq_ok && rep.pass;
        }
        entry["exact_sequences"] = seqs;
        timing["exact_sequences_ms"] = ms_since(t0);

        t0 = Clock::now();
        // Every x for small genus, basis vectors otherwise.
        const IdentityReport ids = verify_generator_identities(sd, g <= 3 ? XRange::All : XRange::Basis);
        json idj = json::array();
        for (const auto& c : ids.checks)
            idj.push_back({{"name", c.name}, {"checked", c.checked}, {"failures", c.failures}});
        entry["generator_identities"] = {{"checks", idj}, {"pass", ids.pass}};
        timing["identities_ms"] = ms_since(t0);
        entry["pass"] = seq_ok && ids.pass;
        if (cfg.timing) entry["timing"] = timing;
        res.pass = res.pass && seq_ok && ids.pass;
        suite.push_back(entry);

        t0 = Clock::now();
        const CoverCheck cover = cover_check(g, s);
        const double cover_ms = ms_since(t0);

        for (CaseId c : cfg.cases) {
            json rep;
            json ctiming = json::object();
            rep["params"] = {{"g", g},
                             {"s", s},
                             {"case", std::string(to_string(c))},
                             {"bo_convention", std::string(to_string(cfg.bo))},
                             {"extension", std::string(to_string(cfg.extension))}};
            bool ok = true;

            t0 = Clock::now();
            if (g >= 2) {
                bool fok = false;
                rep["formulas"] = formulas_json(c, g, s, fok);
                ok = ok && fok;
                const CensusResult cr = census_summary(c, g, s);
                rep["census"] = census_json(cr);
                ok = ok && cr.pass();
            } else {
                rep["formulas"] = nullptr;
                rep["census"] = nullptr;
            }
            ctiming["formulas_census_ms"] = ms_since(t0);

            t0 = Clock::now();
            const CaseOrbits primary = case_orbits(sd, c, cfg.bo, cfg.extension, cfg, true);
            if (primary.report) {
                const OrbitReport& r = *primary.report;
                json oj = orbit_json(r);
                bool checks_ok = r.partition_ok;
                for (const auto& pc : r.proof_checks) checks_ok = checks_ok && pc.pass;
                const bool match_ok = r.match != MatchStatus::Mismatch;
                oj["engines_agree"] = primary.engines_agree ? json(*primary.engines_agree) : json(nullptr);
                ok = ok && checks_ok && match_ok && primary.engines_agree.value_or(true);

                json conv = json::array();
                json reproducing = json::array();
                for (const auto& [bo, ext] : conventions(c)) {
                    if (c != CaseId::SL2R && ext == ExtensionConvention::Shifted) continue;
                    if (case_space_dim(c, sd, bo, ext) > static_cast<std::size_t>(kExhaustiveCap)) continue;
                    const StateSpace sp = case_space(c, sd, bo, ext);
                    const OrbitReport cr =
                        enumerate_orbits(sp, generator_set(generator_config(c, cfg, bo, sp.dim), sd), EngineOptions{cfg.workers});
                    std::string name = std::string(to_string(bo));
                    if (c == CaseId::SL2R) name += "/" + std::string(to_string(ext));
                    json mm = cr.mismatch_strata;
                    conv.push_back({{"convention", name},
                                    {"total", cr.total_orbits},
                                    {"match", std::string(to_string(cr.match))},
                                    {"mismatch_strata", mm}});
                    if (cr.match == MatchStatus::Exact) reproducing.push_back(name);
                }
                oj["conventions"] = conv;
                oj["reproducing_conventions"] = reproducing;
                rep["orbits"] = oj;
            } else {
                rep["orbits"] = {{"skipped", primary.skipped}};
            }
            ctiming["orbits_ms"] = ms_since(t0);

            rep["cover"] = cover_json(cover);
            ok = ok && cover.pass;
            ctiming["cover_ms"] = cover_ms;
            rep["pass"] = ok;
            if (cfg.timing) rep["timing"] = ctiming;
            res.pass = res.pass && ok;
            reports.push_back(rep);
        }
    });

    res.doc = {{"command", "verify"}, {"suite", suite}, {"reports", reports}, {"pass", res.pass}};
    return res;
}

const std::vector<std::string> kSweepColumns = {"g",         "s",           "case",      "component", "orbit",
                                                "min",       "census",      "orbit_dim", "orbit_total",
                                                "orbit_reason", "closed_total", "match"};

json run_sweep(const RunConfig& cfg) {
    validate_config(cfg);
    json rows = json::array();
    for_grid(cfg, [&](int g, int s) {
        const SurfaceData sd = surface_data(g, s);
        for (CaseId c : cfg.cases) {
            json row{{"g", g}, {"s", s}, {"case", std::string(to_string(c))}};
            if (g >= 2) {
                row["component"] = big_json(component_count(c, g, s));
                row["orbit"] = big_json(orbit_count_closed(c, g, s));
                row["min"] = big_json(min_component_count(c, g, s));
                const BigInt target = min_component_count(c, g, s);
                row["census"] = target <= BigInt(kCensusCap) ? json(census_summary(c, g, s).count) : json(nullptr);
            } else {
                row["component"] = row["orbit"] = row["min"] = row["census"] = nullptr;
            }
            const std::size_t dim = case_space_dim(c, sd, cfg.bo, cfg.extension);
            row["orbit_dim"] = dim;
            if (dim > static_cast<std::size_t>(kExhaustiveCap)) {
                row["orbit_total"] = nullptr;
                row["orbit_reason"] = "over_cap";
                row["closed_total"] = row["orbit"];
                row["match"] = nullptr;
            } else {
                const StateSpace sp = case_space(c, sd, cfg.bo, cfg.extension);
                const OrbitReport r = enumerate_orbits(sp, generator_set(generator_config(c, cfg, cfg.bo, sp.dim), sd),
                                                       EngineOptions{cfg.workers});
                row["orbit_total"] = r.total_orbits;
                row["orbit_reason"] = "";
                row["closed_total"] = r.closed_total ? json(*r.closed_total) : json(nullptr);
                row["match"] = std::string(to_string(r.match));
            }
            rows.push_back(row);
        }
    });
    return rows;
}

namespace {

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += '"';
            out += ch;
        }
        return out + "\"";
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

}  // namespace

std::string rows_csv(const json& rows, const std::vector<std::string>& columns) {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out << ',';
            out << (row.contains(columns[i]) ? csv_cell(row[columns[i]]) : "");
        }
        out << '\n';
    }
    return out.str();
}

std::string sweep_csv(const json& rows) { return rows_csv(rows, kSweepColumns); }

json run_orbits(const RunConfig& cfg) {
    validate_config(cfg);
    json reports = json::array();
    for_grid(cfg, [&](int g, int s) {
        const SurfaceData sd = surface_data(g, s);
        for (CaseId c : cfg.cases) {
            json rep;
            rep["params"] = {{"g", g},
                             {"s", s},
                             {"case", std::string(to_string(c))},
                             {"bo_convention", std::string(to_string(cfg.bo))},
                             {"extension", std::string(to_string(cfg.extension))}};
            const auto t0 = Clock::now();
            const CaseOrbits co = case_orbits(sd, c, cfg.bo, cfg.extension, cfg, false);
            rep["orbits"] = co.report ? orbit_json(*co.report) : json{{"skipped", co.skipped}};
            if (cfg.timing) rep["timing"] = {{"orbits_ms", ms_since(t0)}};
            reports.push_back(rep);
        }
    });
    return {{"command", "orbits"}, {"reports", reports}};
}

json run_census(const RunConfig& cfg) {
    validate_config(cfg);
    if (cfg.g.lo < 2) throw HypothesisViolation("census needs g >= 2");
    json reports = json::array();
    json weights = json::array();
    for_grid(cfg, [&](int g, int s) {
        for (CaseId c : cfg.cases) {
            json rep;
            rep["params"] = {{"g", g}, {"s", s}, {"case", std::string(to_string(c))}};
            rep["census"] = census_json(census_summary(c, g, s));
            reports.push_back(rep);
        }
    });
    for (int s = cfg.s.lo; s <= cfg.s.hi; ++s) {
        const WeightTypeCensus w = weight_type_census(s);
        json rows = json::array();
        for (const auto& r : w.rows)
            rows.push_back({{"j", r.j},
                            {"assignments", r.assignments},
                            {"choices_per_assignment", big_json(r.choices_per_assignment)},
                            {"j_beta", r.j_beta},
                            {"total_choices", big_json(r.total_choices)}});
        weights.push_back({{"s", s}, {"rows", rows}, {"total_choices", big_json(w.total_choices)}});
    }
    return {{"command", "census"}, {"reports", reports}, {"weight_types", weights}};
}

json run_cover_check(const RunConfig& cfg) {
    validate_config(cfg);
    json reports = json::array();
    for_grid(cfg, [&](int g, int s) {
        json rep;
        rep["params"] = {{"g", g}, {"s", s}};
        rep["cover"] = cover_json(cover_check(g, s));
        reports.push_back(rep);
    });
    return {{"command", "cover-check"}, {"reports", reports}};
}

}  // namespace pmono
