// covrad: command-line front end for the RM(3,7) covering radius pipeline.
//
// Exit status: 0 verified/matched, 1 mismatch or counterexample, 2 usage,
// scale or integrity error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "covrad/boolfn.hpp"
#include "covrad/classify.hpp"
#include "covrad/field.hpp"
#include "covrad/io.hpp"
#include "covrad/nonlin.hpp"
#include "covrad/orbit.hpp"
#include "covrad/parallel.hpp"
#include "covrad/verify.hpp"
#include "reference_values.hpp"

namespace fs = std::filesystem;
using namespace covrad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string g_command;  // the invocation, embedded in every output file

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void note(const std::string& msg) { std::cerr << msg << "\n"; }

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

// Text outputs start with the command line; JSON ones carry it as a field.
void emit(const std::string& out_path, const std::string& text) {
    std::cout << text;
    if (out_path.empty()) return;
    write_text_atomic(out_path, "# command: " + g_command + "\n" + text);
}

void write_sidecar(const fs::path& artifact, const std::vector<std::pair<std::string, std::string>>& inputs,
                   std::uint64_t content_hash) {
    nlohmann::ordered_json j;
    j["command"] = g_command;
    j["artifact"] = artifact.filename().string();
    j["content_hash"] = hash_hex(content_hash);
    j["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : inputs) j["inputs"][k] = v;
    write_text_atomic(artifact.string() + ".meta.json", j.dump(2) + "\n");
}

// ---------------------------------------------------------------- inputs

struct Inputs {
    int workers = 1;
    std::string tables_dir;
    std::string aset_path;

    NlTable table(int fn) const {
        if (!tables_dir.empty()) {
            const fs::path p = fs::path(tables_dir) / ("fn" + std::to_string(fn) + "_r3.nlt");
            if (fs::exists(p)) {
                NlTable t = load_nl_table(p);
                if (t.base() != fn_rep(fn) || t.order() != 3)
                    throw std::runtime_error("input hash mismatch: " + p.string() + " is not the fn_" +
                                             std::to_string(fn) + " table");
                return t;
            }
        }
        Stopwatch sw;
        NlTable t = build_nl_table(fn_rep(fn), 3, workers);
        note("built F-table fn_" + std::to_string(fn) + " in " + std::to_string(sw.seconds()) + " s");
        return t;
    }

    MatrixSet matrices() const {
        if (!aset_path.empty()) return load_matrix_set(aset_path);
        Stopwatch sw;
        const auto gens = agl6_generators();
        auto res = bfs_orbit(coset_key(fn_rep(10)), gens);
        note("orbit of fn_10 walked in " + std::to_string(sw.seconds()) + " s");
        return std::move(res.matrices);
    }
};

// ---------------------------------------------------------------- nl

int cmd_nl(const std::string& anf, const std::string& hex, int n, int r, const std::string& engine) {
    if (anf.empty() == hex.empty()) throw UsageError("give exactly one of --anf or --hex");
    BooleanFunction f;
    if (!anf.empty()) {
        // Without --n the highest variable named sets n, raised to r for constants.
        if (n <= 0) n = std::max(parse_anf(anf).vars(), r);
        f = parse_anf(anf, n);
    }
    else {
        if (n <= 0) throw UsageError("--hex needs --n");
        f = parse_hex(n, hex);
    }
    if (r < 0 || r > f.vars()) throw UsageError("--r must lie in 0.." + std::to_string(f.vars()));
    int value = 0;
    if (engine == "recursive") value = nl_r_recursive(f, r);
    else if (engine == "bruteforce") value = nl_r_bruteforce(f, r);
    else throw UsageError("unknown engine " + engine);
    std::cout << value << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- tables

int diff_cell(std::ostringstream& out, const std::string& what, long long got, long long want) {
    if (got == want) return 0;
    out << "  mismatch " << what << ": computed " << got << ", reference " << want << "\n";
    return 1;
}

int table1(const Inputs& in, bool csv, const std::string& out_path) {
    const auto props = compute_class_properties(in.workers);
    std::ostringstream out;
    int bad = 0;
    if (csv) {
        out << "fn,deg,nl2,nl3,ml2\n";
        for (int i = 0; i < kClassCount; ++i)
            out << i << "," << props[i].degree << "," << props[i].nl2 << "," << props[i].nl3 << "," << props[i].ml2
                << "\n";
        out << "\n" << exclusion_csv(exclusion_table(props));
    } else {
        out << "f     ";
        for (int i = 0; i < kClassCount; ++i) out << pad("fn_" + std::to_string(i), 6);
        out << "\n";
        const auto row = [&](const char* name, auto field) {
            out << name;
            for (int i = 0; i < kClassCount; ++i) out << pad(std::to_string(field(props[i])), 6);
            out << "\n";
        };
        row("deg   ", [](const ClassProperties& p) { return p.degree; });
        row("nl2   ", [](const ClassProperties& p) { return p.nl2; });
        row("nl3   ", [](const ClassProperties& p) { return p.nl3; });
        row("ml2   ", [](const ClassProperties& p) { return p.ml2; });
        out << "\nexclusion of nl3 = 21 by type (bound = min(nl3_i + ml2_j, nl3_j + ml2_i)):\n";
        for (const auto& e : exclusion_table(props)) {
            if (e.diagonal) continue;
            out << "  " << pad(e.type.to_string(), 7) << pad(std::to_string(e.bound), 4)
                << (e.excluded ? "  excluded" : "  deep-check") << "\n";
        }
    }
    std::ostringstream diff;
    for (int i = 0; i < kClassCount; ++i) {
        const auto& w = reference::kTable1[i];
        const std::string p = "fn_" + std::to_string(i) + ".";
        bad += diff_cell(diff, p + "deg", props[i].degree, w.deg);
        bad += diff_cell(diff, p + "nl2", props[i].nl2, w.nl2);
        bad += diff_cell(diff, p + "nl3", props[i].nl3, w.nl3);
        bad += diff_cell(diff, p + "ml2", props[i].ml2, w.ml2);
    }
    out << "\n" << diff.str() << "table 1: " << (4 * kClassCount - bad) << "/" << 4 * kClassCount
        << " entries match\n";
    emit(out_path, out.str());
    return bad ? kExitMismatch : kExitOk;
}

template <std::size_t N>
int level_table(const Inputs& in, const std::array<reference::LevelRow, N>& rows, int which, bool csv,
                const std::string& out_path) {
    std::ostringstream out, diff;
    int bad = 0;
    const int first = rows[0].first_k;
    if (csv) {
        out << "fn,hash";
        for (int s = 0; s < 6; ++s) out << ",k" << first + 2 * s;
        out << ",sum\n";
    } else {
        out << "table " << which << ": |F_fn(k)| at (n,r) = (6,3)\n" << pad("f", 6) << pad("hash", 18);
        for (int s = 0; s < 6; ++s) out << pad("k=" + std::to_string(first + 2 * s), 9);
        out << pad("sum", 9) << "\n";
    }
    for (const auto& row : rows) {
        const NlTable t = in.table(row.fn);
        std::uint64_t sum = 0;
        for (int k = 0; k <= NlTable::kMaxValue; ++k) sum += t.count(k);
        const std::string name = "fn_" + std::to_string(row.fn);
        if (csv) out << row.fn << "," << hash_hex(t.content_hash());
        else out << pad(name, 6) << pad(hash_hex(t.content_hash()), 18);
        for (int s = 0; s < 6; ++s) {
            const int k = row.first_k + 2 * s;
            if (csv) out << "," << t.count(k);
            else out << pad(std::to_string(t.count(k)), 9);
            bad += diff_cell(diff, name + " k=" + std::to_string(k), t.count(k), row.counts[s]);
        }
        out << (csv ? "," : "") << (csv ? std::to_string(sum) : pad(std::to_string(sum), 9)) << "\n";
        // Every value must fall in one of the reference columns.
        std::uint64_t listed = 0;
        for (int s = 0; s < 6; ++s) listed += t.count(row.first_k + 2 * s);
        bad += diff_cell(diff, name + " entries outside listed k", sum - listed, 0);
        bad += diff_cell(diff, name + " sum", sum, std::uint64_t{1} << 20);
    }
    out << "\n" << diff.str() << "table " << which << ": " << (bad ? "MISMATCH" : "all counts match") << "\n";
    emit(out_path, out.str());
    return bad ? kExitMismatch : kExitOk;
}

int table5(bool csv, const std::string& out_path) {
    const auto lengths = all_orbit_lengths();
    std::ostringstream out, diff;
    int bad = 0;
    std::uint64_t sum = 0;
    out << (csv ? "fn,orbit_length\n" : "table 5: AGL(6,2)-orbit lengths in RM(6,6)/RM(3,6)\n");
    for (int i = 0; i < kClassCount; ++i) {
        sum += lengths[i];
        if (csv) out << i << "," << lengths[i] << "\n";
        else out << pad("fn_" + std::to_string(i), 7) << pad(std::to_string(lengths[i]), 10) << "\n";
        bad += diff_cell(diff, "fn_" + std::to_string(i), lengths[i], reference::kTable5[i]);
    }
    out << (csv ? "sum," : pad("sum", 7)) << (csv ? std::to_string(sum) : pad(std::to_string(sum), 10)) << "\n";
    bad += diff_cell(diff, "sum", sum, std::uint64_t{1} << 22);
    out << "\n" << diff.str() << "table 5: " << (bad ? "MISMATCH" : "all lengths match") << "\n";
    emit(out_path, out.str());
    return bad ? kExitMismatch : kExitOk;
}

int cmd_tables(const Inputs& in, int which, bool csv, const std::string& out_path) {
    switch (which) {
        case 1: return table1(in, csv, out_path);
        case 2: return level_table(in, reference::kTable2, 2, csv, out_path);
        case 3: return level_table(in, reference::kTable3, 3, csv, out_path);
        case 5: return table5(csv, out_path);
        default: throw UsageError("tables: choose 1, 2, 3 or 5");
    }
}

// ---------------------------------------------------------------- bounds

int cmd_bounds(const std::string& out_path) {
    const auto props = compute_class_properties();
    std::ostringstream out, diff;
    int bad = 0;
    const int rho = rho_upper_bound(props);
    out << "rho(3,7) <= max_k nl3(fn_k) + ml2(fn_k) = " << rho << "\n";
    bad += diff_cell(diff, "rho_upper_bound", rho, reference::kRhoUpperBound);
    const auto chain = chain_bounds();
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto& c = chain[i];
        const std::string name = "rho(" + std::to_string(c.r) + "," + std::to_string(c.n) + ")";
        out << name << " <= " << c.derivation << " = " << c.value << "\n";
        bad += diff_cell(diff, name, c.value, reference::kChainBounds[i]);
    }
    out << diff.str();
    emit(out_path, out.str());
    return bad ? kExitMismatch : kExitOk;
}

// ---------------------------------------------------------------- artifacts

int cmd_build_table(const Inputs& in, int fn, int r, const std::string& out_path) {
    if (out_path.empty()) throw UsageError("build-table needs --out");
    const BooleanFunction base = fn_rep(fn);
    const NlTable t = build_nl_table(base, r, in.workers);
    save_nl_table(t, out_path);
    write_sidecar(out_path, {{"base", to_hex(base)}, {"order", std::to_string(r)}}, t.content_hash());
    std::cout << "wrote " << out_path << " (" << t.size() << " entries, hash " << hash_hex(t.content_hash())
              << ")\n";
    return kExitOk;
}

int cmd_orbit(int fn, const std::string& out_path) {
    const auto gens = agl6_generators();
    const CosetKey start = coset_key(fn_rep(fn));
    const auto res = bfs_orbit(start, gens);
    std::cout << "fn_" << fn << ": orbit length " << res.size << ", distinct matrices " << res.matrices.size()
              << ", hash " << hash_hex(res.matrices.content_hash()) << "\n";
    if (!out_path.empty()) {
        save_matrix_set(res.matrices, out_path);
        write_sidecar(out_path, {{"start_key", std::to_string(start)}, {"fn", std::to_string(fn)}},
                      res.matrices.content_hash());
    }
    int bad = 0;
    std::ostringstream diff;
    bad += diff_cell(diff, "orbit length", res.size, reference::kTable5[fn]);
    if (fn == 10) bad += diff_cell(diff, "distinct matrices", res.matrices.size(), reference::kDistinctMatrices);
    std::cout << diff.str();
    return bad ? kExitMismatch : kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string stage;
    std::string checkpoint_dir;
    bool opt_in_long = false;
    bool proxy = false;
    bool json = false;
    std::string out;
};

int diff_verdict(const Verdict& v, std::ostringstream& diff) {
    int bad = 0;
    if (v.stage == "check_29") {
        bad += diff_cell(diff, "check_29 candidates", v.counter("candidates"), reference::kCheck29Candidates);
    } else if (v.stage == "check_310") {
        bad += diff_cell(diff, "check_310 round-1 candidates", v.counter("round1_candidates"),
                         reference::kCheck310Candidates);
        bad += diff_cell(diff, "check_310 round-1 survivors", v.counter("round1_survivors"),
                         reference::kCheck310Survivors);
    } else if (v.stage.rfind("sweep_610", 0) == 0) {
        // Extra matrices only enlarge the sweep, so a different |A| is reported without failing the stage.
        if (v.counter("matrices_total") != reference::kDistinctMatrices)
            diff << "  note: swept " << v.counter("matrices_total") << " matrices, reference |A| is "
                 << reference::kDistinctMatrices << "\n";
    }
    return bad;
}

std::string render(const std::vector<Verdict>& stages, const std::string& tail, bool json) {
    if (!json) {
        std::string s;
        for (const auto& v : stages) s += verdict_text(v);
        return s + tail;
    }
    nlohmann::ordered_json j;
    j["command"] = g_command;
    j["stages"] = nlohmann::ordered_json::array();
    for (const auto& v : stages) j["stages"].push_back(nlohmann::ordered_json::parse(verdict_json(v)));
    j["notes"] = tail;
    return j.dump(2) + "\n";
}

int cmd_verify(const Inputs& in, const VerifyArgs& a) {
    const bool wants_sweep = a.stage == "610" || a.stage == "all";
    if (wants_sweep && !a.proxy && !a.opt_in_long)
        throw UsageError("the full sweep_610 is long-running; pass --opt-in-long, or --proxy for the 1% shard subset");

    std::vector<Verdict> stages;
    std::string tail;
    if (a.stage == "29") {
        stages.push_back(check_29(in.table(2), in.table(9)));
    } else if (a.stage == "310") {
        stages.push_back(check_310(in.table(3), in.table(10)));
    } else if (a.stage == "610") {
        const MatrixSet aset = in.matrices();
        SweepOptions o;
        o.workers = in.workers;
        o.checkpoint_dir = a.checkpoint_dir;
        if (a.proxy) o.only_shards = proxy_shards(o.shards);
        o.progress = [](int done, int total) {
            std::fprintf(stderr, "\rsweep_610: %d/%d shards", done, total);
            if (done == total) std::fprintf(stderr, "\n");
        };
        Verdict v = sweep_610(aset, in.table(6), in.table(10), o);
        if (a.proxy) v.stage = "sweep_610 (1% proxy)";
        stages.push_back(std::move(v));
    } else if (a.stage == "all") {
        ProveOptions o;
        o.workers = in.workers;
        o.full_sweep = !a.proxy;
        o.checkpoint_dir = a.checkpoint_dir;
        const ProofReport rep = prove_rho37(o);
        stages = rep.stages;
        tail = "deep-checked types:";
        for (const auto& t : rep.deep_checked) tail += " " + t.to_string();
        tail += "\nconclusion: " + rep.conclusion + "\n";
    } else {
        throw UsageError("verify: stage must be 29, 310, 610 or all");
    }

    std::ostringstream diff;
    int bad = 0;
    bool pass = true;
    for (const auto& v : stages) {
        pass = pass && v.pass;
        bad += diff_verdict(v, diff);
    }
    const std::string report = render(stages, tail + diff.str(), a.json);
    std::cout << report;
    if (!a.out.empty()) write_text_atomic(a.out, a.json ? report : "# command: " + g_command + "\n" + report);
    return pass && bad == 0 ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------- agl

int cmd_agl(int n, int q, const std::string& action, std::size_t cap) {
    const FiniteField& field = FiniteField::get(q);
    if (n < 1) throw UsageError("--n must be positive");
    const auto [a, b] = agl_generators(n, field);
    const std::vector<AffineMap> gens{a, b};
    if (action == "gens") {
        std::cout << "GF(" << q << ")";
        if (field.k() > 1) std::cout << " = GF(" << field.p() << ")[x]/(" << field.modulus_string() << ")";
        std::cout << "\nA: matrix [" << format_matrix(a) << "] shift [" << format_vector(a) << "]\n";
        std::cout << "B: matrix [" << format_matrix(b) << "] shift [" << format_vector(b) << "]\n";
        return kExitOk;
    }
    if (action == "order") {
        const std::size_t got = generate_group(gens, cap);
        const std::uint64_t want = agl_order(n, q);
        std::cout << "|<A,B>| = " << got << ", |AGL(" << n << "," << q << ")| = " << want << "\n";
        return got == want ? kExitOk : kExitMismatch;
    }
    if (action == "cyclic") {
        const std::size_t m = max_element_order(gens, cap);
        const std::uint64_t order = agl_order(n, q);
        if (m == order) std::cout << "cyclic (element of order " << m << ")\n";
        else std::cout << "not cyclic (max order " << m << " < " << order << ")\n";
        return kExitOk;
    }
    throw UsageError("agl: action must be gens, order or cyclic");
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) g_command += (i ? " " : "") + std::string(argv[i]);

    CLI::App app{"covrad: covering radius of RM(3,7)"};
    app.require_subcommand(1);
    Inputs in;
    in.workers = default_workers();
    const auto add_workers = [&](CLI::App* sub) {
        sub->add_option("--workers", in.workers, "worker threads")->check(CLI::Range(1, 1024));
    };
    const auto add_tables_dir = [&](CLI::App* sub) {
        sub->add_option("--tables-dir", in.tables_dir, "directory with fn<i>_r3.nlt tables (built if absent)");
    };

    std::string anf, hex, engine = "recursive", out;
    int n = 0, r = 0;
    auto* nl = app.add_subcommand("nl", "r-th order nonlinearity of one function");
    nl->add_option("--anf", anf, "ANF, e.g. x1x2x3+x4");
    nl->add_option("--hex", hex, "truth table in hex");
    nl->add_option("--n", n, "number of variables");
    nl->add_option("--r", r, "order")->required();
    nl->add_option("--engine", engine, "recursive or bruteforce");

    int which = 0;
    bool csv = false;
    auto* tables = app.add_subcommand("tables", "recompute a reference table and diff it");
    tables->add_option("which", which, "1, 2, 3 or 5")->required();
    tables->add_flag("--csv", csv, "CSV instead of aligned text");
    tables->add_option("--out", out, "also write the rendering here");
    add_workers(tables);
    add_tables_dir(tables);

    auto* bounds = app.add_subcommand("bounds", "upper bound from Table 1 and the chain bounds");
    bounds->add_option("--out", out, "also write the rendering here");

    int fn = 0;
    auto* build = app.add_subcommand("build-table", "write the (6,3) NLT1 table of fn_i");
    build->add_option("--fn", fn, "class index")->required()->check(CLI::Range(0, kClassCount - 1));
    int table_r = 3;
    build->add_option("--r", table_r, "order");
    build->add_option("--out", out, "NLT1 file")->required();
    add_workers(build);

    auto* orbit = app.add_subcommand("orbit", "walk the AGL(6,2) orbit of fn_i's coset");
    orbit->add_option("--fn", fn, "class index")->required()->check(CLI::Range(0, kClassCount - 1));
    orbit->add_option("--out", out, "write the AMS1 matrix set here");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run a proof stage");
    verify->add_option("stage", va.stage, "29, 310, 610 or all")->required();
    verify->add_option("--checkpoint-dir", va.checkpoint_dir, "resume directory for sweep_610");
    verify->add_flag("--opt-in-long", va.opt_in_long, "allow the full sweep_610");
    verify->add_flag("--proxy", va.proxy, "sweep only the fixed 1% shard subset");
    verify->add_flag("--json", va.json, "JSON report");
    verify->add_option("--out", va.out, "also write the report here");
    verify->add_option("--aset", in.aset_path, "AMS1 matrix set for sweep_610 (walked if absent)");
    add_workers(verify);
    add_tables_dir(verify);

    int q = 2;
    std::string action;
    std::size_t cap = 5'000'000;
    auto* agl = app.add_subcommand("agl", "two-element generation of AGL(n,q)");
    agl->add_option("action", action, "gens, order or cyclic")->required();
    agl->add_option("--n", n, "dimension")->required();
    agl->add_option("--q", q, "field size")->required();
    agl->add_option("--cap", cap, "closure size limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        Stopwatch sw;
        int rc = kExitError;
        if (*nl) rc = cmd_nl(anf, hex, n, r, engine);
        else if (*tables) rc = cmd_tables(in, which, csv, out);
        else if (*bounds) rc = cmd_bounds(out);
        else if (*build) rc = cmd_build_table(in, fn, table_r, out);
        else if (*orbit) rc = cmd_orbit(fn, out);
        else if (*verify) rc = cmd_verify(in, va);
        else if (*agl) rc = cmd_agl(n, q, action, cap);
        note("elapsed " + std::to_string(sw.seconds()) + " s");
        return rc;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kExitError;
}
