#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pmono/errors.hpp"
#include "pmono/verify.hpp"

using nlohmann::json;
using namespace pmono;

namespace {

struct Flags {
    std::string g = "2";
    std::string s = "1";
    std::string case_name = "all";
    std::string bo = "full";
    std::string extension = "product";
    std::string involution;
    std::string format = "csv";
    std::string out;
    int workers = 1;
    bool allow_low_genus = false;
    bool timing = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--g", f.g, "genus range A..B");
    cmd->add_option("--s", f.s, "puncture range A..B");
    cmd->add_option("--case", f.case_name, "sl2r, gl2r, pgl2r or all");
    cmd->add_option("--bo-convention", f.bo, "full or quotient");
    cmd->add_option("--extension", f.extension, "product or shifted");
    cmd->add_option("--include-involution", f.involution, "matrix file with an extra generator");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", f.out, "output path (default stdout)");
    cmd->add_option("--workers", f.workers, "worker threads");
    cmd->add_flag("--allow-low-genus", f.allow_low_genus, "run below genus 2");
    cmd->add_flag("--timing", f.timing, "include wall-clock timings in reports");
}

RunConfig to_config(const Flags& f) {
    RunConfig cfg;
    cfg.g = parse_range(f.g);
    cfg.s = parse_range(f.s);
    if (f.case_name != "all") cfg.cases = {case_from_string(f.case_name)};
    cfg.bo = bo_convention_from_string(f.bo);
    cfg.extension = extension_from_string(f.extension);
    if (!f.involution.empty()) cfg.involution = read_matrix_file(f.involution);
    cfg.workers = f.workers;
    cfg.allow_low_genus = f.allow_low_genus;
    cfg.timing = f.timing;
    return cfg;
}

json flatten(const json& reports, const std::vector<std::string>& path_cols,
             const std::vector<std::pair<std::string, json::json_pointer>>& fields) {
    json rows = json::array();
    for (const auto& rep : reports) {
        json row;
        for (const auto& c : path_cols) row[c] = rep["params"][c];
        for (const auto& [name, ptr] : fields) row[name] = rep.contains(ptr) ? rep[ptr] : json(nullptr);
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::string> columns(const std::vector<std::string>& head,
                                 const std::vector<std::pair<std::string, json::json_pointer>>& fields) {
    std::vector<std::string> out = head;
    for (const auto& f : fields) out.push_back(f.first);
    return out;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open " + out);
    file << text;
    if (!file) throw std::ios_base::failure("cannot write " + out);
}

using P = json::json_pointer;

std::string verify_csv(const json& doc) {
    const std::vector<std::pair<std::string, P>> fields = {
        {"component", P("/formulas/component")}, {"orbit", P("/formulas/orbit")},
        {"min", P("/formulas/min")},             {"census", P("/census/count")},
        {"orbit_total", P("/orbits/total")},     {"closed_total", P("/orbits/closed_total")},
        {"match", P("/orbits/match")},           {"cover", P("/cover/pass")},
        {"pass", P("/pass")}};
    const std::vector<std::string> head = {"g", "s", "case"};
    return rows_csv(flatten(doc["reports"], head, fields), columns(head, fields));
}

std::string orbits_csv(const json& doc) {
    json rows = json::array();
    for (const auto& rep : doc["reports"]) {
        const auto& p = rep["params"];
        if (!rep["orbits"].contains("strata")) {
            rows.push_back({{"g", p["g"]}, {"s", p["s"]}, {"case", p["case"]}, {"key", ""},
                            {"orbits", nullptr}, {"elements", nullptr}, {"representative", rep["orbits"]["skipped"]}});
            continue;
        }
        for (const auto& st : rep["orbits"]["strata"])
            rows.push_back({{"g", p["g"]},
                            {"s", p["s"]},
                            {"case", p["case"]},
                            {"key", st["key"]},
                            {"orbits", st["orbits"]},
                            {"elements", st["elements"]},
                            {"representative", st["representative"]}});
    }
    return rows_csv(rows, {"g", "s", "case", "key", "orbits", "elements", "representative"});
}

std::string census_csv(const json& doc) {
    const std::vector<std::pair<std::string, P>> fields = {{"count", P("/census/count")},
                                                           {"target", P("/census/target")},
                                                           {"distinct", P("/census/distinct")},
                                                           {"pass", P("/census/pass")}};
    const std::vector<std::string> head = {"g", "s", "case"};
    return rows_csv(flatten(doc["reports"], head, fields), columns(head, fields));
}

std::string cover_csv(const json& doc) {
    const std::vector<std::pair<std::string, P>> fields = {
        {"euler_base", P("/cover/euler_base")},
        {"euler_cover", P("/cover/euler_cover")},
        {"g_eta", P("/cover/g_eta")},
        {"h1_base", P("/cover/ranks/h1_base")},
        {"h1_cover", P("/cover/ranks/h1_cover")},
        {"pushforward_kernel", P("/cover/ranks/pushforward_kernel")},
        {"pushforward_kernel_expected", P("/cover/ranks/pushforward_kernel_expected")},
        {"pass", P("/cover/pass")}};
    const std::vector<std::string> head = {"g", "s"};
    return rows_csv(flatten(doc["reports"], head, fields), columns(head, fields));
}

bool all_pass(const json& reports, const P& ptr) {
    for (const auto& r : reports)
        if (!r.contains(ptr) || !r[ptr].get<bool>()) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monodromy orbit and component-count checks for parabolic Higgs moduli"};
    app.require_subcommand(1);
    Flags flags;
    auto* sweep = app.add_subcommand("sweep", "formula, census and orbit totals over a parameter grid");
    auto* orbits = app.add_subcommand("orbits", "orbit enumeration with strata");
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    auto* census = app.add_subcommand("census", "label census against the minimum counts");
    auto* cover = app.add_subcommand("cover-check", "cell-complex cover ranks");
    for (auto* cmd : {sweep, orbits, verify, census, cover}) add_flags(cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const RunConfig cfg = to_config(flags);
        const bool as_json = flags.format == "json";
        int rc = 0;
        if (*sweep) {
            const json rows = run_sweep(cfg);
            emit(as_json ? json{{"command", "sweep"}, {"rows", rows}}.dump(2) + "\n" : sweep_csv(rows), flags.out);
        } else if (*orbits) {
            const json doc = run_orbits(cfg);
            emit(as_json ? doc.dump(2) + "\n" : orbits_csv(doc), flags.out);
        } else if (*verify) {
            const VerifyResult res = run_verify(cfg);
            emit(as_json ? res.doc.dump(2) + "\n" : verify_csv(res.doc), flags.out);
            std::cerr << "verify: " << (res.pass ? "PASS" : "FAIL") << '\n';
            rc = res.pass ? 0 : 1;
        } else if (*census) {
            const json doc = run_census(cfg);
            emit(as_json ? doc.dump(2) + "\n" : census_csv(doc), flags.out);
            rc = all_pass(doc["reports"], P("/census/pass")) ? 0 : 1;
        } else if (*cover) {
            const json doc = run_cover_check(cfg);
            emit(as_json ? doc.dump(2) + "\n" : cover_csv(doc), flags.out);
            rc = all_pass(doc["reports"], P("/cover/pass")) ? 0 : 1;
        }
        return rc;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidParameters& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const HypothesisViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity failure: " << e.what() << '\n';
        return 1;
    }
}
