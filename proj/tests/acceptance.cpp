// One line per acceptance criterion. Takes the path of the pmono executable
// as its only argument (criterion 7 runs it).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pmono/census.hpp"
#include "pmono/cover.hpp"
#include "pmono/formulas.hpp"
#include "pmono/lattice.hpp"
#include "pmono/monodromy.hpp"
#include "pmono/orbits.hpp"

using namespace pmono;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitRanks = 1.0;
constexpr double kLimitIdentities = 5.0;
constexpr double kLimitEngines = 30.0;
constexpr double kLimitPincer = 1.0;
constexpr double kLimitCover = 5.0;
constexpr double kLimitVerify21 = 60.0;

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

int failures = 0;

template <class F>
void criterion(int id, const std::string& name, double limit, F&& body) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
        body(out);
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit > 0 && secs >= limit) out.fail("took " + std::to_string(secs) + " s");
    std::ostringstream line;
    line << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << name;
    char t[64];
    std::snprintf(t, sizeof t, "  [%.2f s", secs);
    line << t;
    if (limit > 0) line << " < " << limit << " s";
    line << "]";
    if (!out.detail.empty()) line << "  " << out.detail;
    std::cout << line.str() << std::endl;
    if (!out.pass) ++failures;
}

GeneratorConfig gens_for(CaseId c, XRange xr = XRange::Basis) {
    GeneratorConfig cfg;
    cfg.case_id = c;
    cfg.x_range = xr;
    return cfg;
}

bool same_orbits(const OrbitReport& a, const OrbitReport& b) {
    if (a.total_orbits != b.total_orbits || a.strata.size() != b.strata.size()) return false;
    for (std::size_t i = 0; i < a.strata.size(); ++i)
        if (!(a.strata[i].key == b.strata[i].key) || a.strata[i].orbits != b.strata[i].orbits ||
            a.strata[i].elements != b.strata[i].elements)
            return false;
    return true;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    criterion(1, "lattice ranks and exact sequences", kLimitRanks, [](Outcome& o) {
        for (int g = 2; g <= 4; ++g)
            for (int s = 1; s <= 4; ++s) {
                const auto sd = surface_data(g, s);
                const std::string at = " at (" + std::to_string(g) + "," + std::to_string(s) + ")";
                if (build_lattice(LatticeKind::LambdaMeta, sd).total_dim != std::size_t(8 * g + 4 * s - 7) ||
                    8 * g + 4 * s - 7 != 2 * sd.g_eta + 2 * s - 1)
                    o.fail("meta rank" + at);
                if (build_lattice(LatticeKind::LambdaPV, sd).total_dim != std::size_t((2 * g + s - 1) + (2 * sd.l - 1)))
                    o.fail("PV rank" + at);
                if (build_lattice(LatticeKind::LambdaM, sd).total_dim != std::size_t(2 * g + s - 1))
                    o.fail("M rank" + at);
                for (const auto& r : check_exact_sequences(sd))
                    if (!r.composition_zero || !r.rank_additive || !r.pass)
                        o.fail("sequence " + std::to_string(r.id) + at);
            }
    });

    criterion(2, "generator identities at (2,1), all pairs and all x", kLimitIdentities, [](Outcome& o) {
        const auto rep = verify_generator_identities(surface_data(2, 1), XRange::All);
        for (const auto& c : rep.checks)
            if (c.failures) o.fail(c.name + ": " + std::to_string(c.failures) + " failures");
        if (!rep.pass) o.fail("identity report failed");
    });

    criterion(3, "enumerate and classify agree on every case space at (2,1), (2,2)", kLimitEngines, [](Outcome& o) {
        for (auto [g, s] : {std::pair{2, 1}, std::pair{2, 2}}) {
            const auto sd = surface_data(g, s);
            for (CaseId c : kAllCases)
                for (BoConvention bo : {BoConvention::Full, BoConvention::Quotient})
                    for (ExtensionConvention ext : {ExtensionConvention::Product, ExtensionConvention::Shifted}) {
                        if (c != CaseId::SL2R && ext == ExtensionConvention::Shifted) continue;
                        const auto sp = case_space(c, sd, bo, ext);
                        auto cfg = gens_for(c);
                        cfg.bo_convention = bo;
                        const auto gens = generator_set(cfg, sd);
                        const auto e = enumerate_orbits(sp, gens);
                        const auto k = classify_orbits(sp, gens);
                        if (!same_orbits(e, k) || !e.partition_ok || k.uncovered_orbits != 0)
                            o.fail(sp.label() + " at (" + std::to_string(g) + "," + std::to_string(s) + ")");
                    }
        }
    });

    criterion(4, "formulas and census agree", kLimitPincer, [](Outcome& o) {
        for (int g = 2; g <= 6; ++g)
            for (int s = 1; s <= 6; ++s) {
                const std::string at = " at (" + std::to_string(g) + "," + std::to_string(s) + ")";
                for (CaseId c : kAllCases) {
                    const auto r = census_summary(c, g, s);
                    if (!r.pass()) o.fail(std::string(to_string(c)) + " census" + at);
                }
                for (CaseId c : {CaseId::SL2R, CaseId::PGL2R}) {
                    const BigInt m = min_component_count(c, g, s);
                    if (m != component_count(c, g, s) || m != orbit_count_closed(c, g, s))
                        o.fail(std::string(to_string(c)) + " formulas" + at);
                }
                if (component_count(CaseId::SL2R, g, s) != component_count(CaseId::PGL2R, g, s))
                    o.fail("SL != PGL" + at);
                if (!(gl_component_terms(g, s) == gl_orbit_terms(g, s))) o.fail("GL terms" + at);
            }
        if (component_count(CaseId::SL2R, 2, 1) != 36 || component_count(CaseId::GL2R, 2, 2) != 164 ||
            component_count(CaseId::GL2R, 2, 1) != 49 || component_count(CaseId::PGL2R, 2, 2) != 76)
            o.fail("spot values");
    });

    criterion(5, "orbit totals vs closed forms, mismatches localized", 0, [](Outcome& o) {
        std::ostringstream notes;
        for (auto [g, s] : {std::pair{2, 1}, std::pair{2, 2}}) {
            const auto sd = surface_data(g, s);
            for (CaseId c : kAllCases) {
                const auto sp = case_space(c, sd, BoConvention::Full, ExtensionConvention::Product);
                const auto r = enumerate_orbits(sp, generator_set(gens_for(c), sd));
                const std::string at = std::string(to_string(c)) + "(" + std::to_string(g) + "," + std::to_string(s) + ")";
                for (const auto& pc : r.proof_checks)
                    if (!pc.pass) o.fail(at + " " + pc.name);
                if (r.match == MatchStatus::Mismatch) o.fail(at + " mismatch outside the ambiguous strata");
                notes << " " << at << "=" << r.total_orbits << "/" << *r.closed_total;
                // Other conventions are reported, not judged.
                for (BoConvention bo : {BoConvention::Full, BoConvention::Quotient})
                    for (ExtensionConvention ext : {ExtensionConvention::Product, ExtensionConvention::Shifted}) {
                        if (c != CaseId::SL2R && ext == ExtensionConvention::Shifted) continue;
                        auto cfg = gens_for(c);
                        cfg.bo_convention = bo;
                        const auto rc = enumerate_orbits(case_space(c, sd, bo, ext), generator_set(cfg, sd));
                        if (rc.match == MatchStatus::Exact)
                            notes << " [" << to_string(bo) << "/" << to_string(ext) << " reproduces " << at << "]";
                    }
            }
        }
        if (o.pass) o.detail = "observed/closed form:" + notes.str();
    });

    criterion(6, "cover Euler characteristic, H1 ranks and pushforward kernel", kLimitCover, [](Outcome& o) {
        for (auto [g, s] : {std::pair{2, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
            const auto c = cover_check(g, s);
            if (!c.pass)
                o.fail("(" + std::to_string(g) + "," + std::to_string(s) + ") h1 " + std::to_string(c.h1_cover) +
                       " kernel " + std::to_string(c.kernel));
        }
    });

    criterion(7, "verify reports identical across worker counts; verify (2,1) time", 0, [&](Outcome& o) {
        if (cli.empty()) {
            o.fail("no pmono executable given");
            return;
        }
        std::vector<std::string> docs;
        for (int w : {1, 4, 8}) {
            const std::string out = "acceptance_verify_w" + std::to_string(w) + ".json";
            const std::string cmd = "\"" + cli + "\" verify --g 2 --s 2 --format json --workers " + std::to_string(w) +
                                    " --out " + out + " 2>/dev/null";
            if (std::system(cmd.c_str()) != 0) o.fail("verify exited nonzero with --workers " + std::to_string(w));
            docs.push_back(slurp(out));
            std::remove(out.c_str());
        }
        if (docs[0].empty() || docs[0] != docs[1] || docs[0] != docs[2]) o.fail("reports differ");
        const auto t0 = Clock::now();
        const std::string cmd = "\"" + cli + "\" verify --g 2 --s 1 --format json --out acceptance_verify_21.json 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) o.fail("verify (2,1) exited nonzero");
        std::remove("acceptance_verify_21.json");
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs >= kLimitVerify21) o.fail("verify (2,1) took " + std::to_string(secs) + " s");
    });

    return failures == 0 ? 0 : 1;
}
