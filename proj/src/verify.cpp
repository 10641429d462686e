#include "covrad/verify.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "covrad/io.hpp"
#include "covrad/nl_kernel.hpp"
#include "covrad/parallel.hpp"
#include "json.hpp"

namespace covrad {

namespace {

void require_table(const NlTable& t, int index, const char* stage) {
    if (t.vars() != 6 || t.order() != 3 || !(t.base() == fn_rep(index)))
        throw std::invalid_argument(std::string(stage) + " needs the fn_" + std::to_string(index) +
                                    " table at (n, r) = (6, 3)");
}

void add_input(Verdict& v, const std::string& name, std::uint64_t hash) { v.inputs.emplace_back(name, hash_hex(hash)); }

// f o L for a 6-variable ANF, returned as ANF.
std::uint64_t compose_anf6(std::uint64_t anf, const Gf2Affine& l) {
    const std::uint64_t tt = mobius64(anf, 6);
    std::uint8_t image[64];
    image[0] = l.shift();
    for (unsigned x = 1; x < 64; ++x) image[x] = image[x & (x - 1)] ^ l.column(__builtin_ctz(x));
    std::uint64_t out = 0;
    for (unsigned x = 0; x < 64; ++x) out |= ((tt >> image[x]) & 1u) << x;
    return mobius64(out, 6);
}

const MonomialSet& cubic6() {
    static const MonomialSet set(6, 3);
    return set;
}

}  // namespace

std::uint64_t Verdict::counter(const std::string& name) const {
    for (const auto& [k, v] : counters)
        if (k == name) return v;
    throw std::out_of_range("no counter '" + name + "' in stage " + stage);
}

void Verdict::set(const std::string& name, std::uint64_t value) {
    for (auto& [k, v] : counters)
        if (k == name) {
            v = value;
            return;
        }
    counters.emplace_back(name, value);
}

Verdict check_29(const NlTable& t2, const NlTable& t9) {
    require_table(t2, 2, "check_29");
    require_table(t9, 9, "check_29");
    Verdict v;
    v.stage = "check_29";
    add_input(v, "F(fn_2)", t2.content_hash());
    add_input(v, "F(fn_9)", t9.content_hash());
    const auto candidates = t9.level_set(15).members.members();
    const auto tested = t2.level_set(8).members.members();
    std::uint64_t satisfying = 0;
    for (std::uint32_t g : candidates) {
        bool inside = true;
        for (std::uint32_t h : tested) {
            const int k = t9[h ^ g];
            if (k != 13 && k != 15) {
                inside = false;
                break;
            }
        }
        if (inside) {
            if (!v.counterexample) v.counterexample = Counterexample{0, 0, g, "F_2(8) inside (F_9(13) u F_9(15)) + g"};
            ++satisfying;
        }
    }
    v.set("candidates", candidates.size());
    v.set("tested_per_candidate", tested.size());
    v.set("satisfying", satisfying);
    v.pass = satisfying == 0;
    return v;
}

Verdict check_310(const NlTable& t3, const NlTable& t10) {
    require_table(t3, 3, "check_310");
    require_table(t10, 10, "check_310");
    Verdict v;
    v.stage = "check_310";
    add_input(v, "F(fn_3)", t3.content_hash());
    add_input(v, "F(fn_10)", t10.content_hash());
    const auto f10_7 = t10.level_set(7).members.members();
    const auto f10_9 = t10.level_set(9).members.members();

    std::uint64_t candidates = 0;
    std::vector<std::uint32_t> survivors;
    for (std::uint32_t g = 0; g < t3.size(); ++g) {
        if (t3[g] != 12 && t3[g] != 14) continue;
        ++candidates;
        const bool inside = std::all_of(f10_7.begin(), f10_7.end(), [&](std::uint32_t h) { return t3[h ^ g] == 14; });
        if (inside) survivors.push_back(g);
    }
    std::uint64_t satisfying = 0;
    for (std::uint32_t g : survivors) {
        const bool inside = std::all_of(f10_9.begin(), f10_9.end(), [&](std::uint32_t h) {
            const int k = t3[h ^ g];
            return k == 12 || k == 14;
        });
        if (inside) {
            if (!v.counterexample)
                v.counterexample = Counterexample{0, 0, g, "F_10(9) inside (F_3(12) u F_3(14)) + g"};
            ++satisfying;
        }
    }
    v.set("round1_candidates", candidates);
    v.set("round1_tested_per_candidate", f10_7.size());
    v.set("round1_survivors", survivors.size());
    v.set("round2_tested_per_candidate", f10_9.size());
    v.set("round2_satisfying", satisfying);
    v.pass = satisfying == 0;
    return v;
}

Reduction reduce_to_610(const BooleanFunction& f) {
    if (f.vars() != 7) throw std::invalid_argument("reduce_to_610 needs a 7-variable function");
    const auto [f1, f2] = split(f);
    const BooleanFunction h = f1 + f2;
    if (!h.coefficient(63)) throw std::invalid_argument("f1 + f2 has no degree-6 monomial");
    const BooleanFunction h4 = homogeneous_part(h, 4);
    if (h4.is_zero())
        throw std::invalid_argument("degree-4 part of f1 + f2 vanishes; use the Case 1 checks instead");

    for (unsigned m = 0; m < 64; ++m) {
        if (__builtin_popcount(m) != 4 || !h4.coefficient(m)) continue;
        for (int k = 1; k <= 6; ++k) {
            if ((m >> (k - 1)) & 1u) continue;
            const BooleanFunction product =
                BooleanFunction::from_truth_table(6, h.truth_table() & BooleanFunction::monomial(6, 1u << (k - 1)).truth_table());
            if (!product.coefficient(63) || homogeneous_part(product, 5).is_zero()) continue;
            // x7 -> x7 + x_k: row 7 of the matrix gains a 1 in column k.
            std::vector<std::uint8_t> cols(7);
            for (int j = 0; j < 7; ++j) cols[j] = static_cast<std::uint8_t>(1u << j);
            cols[k - 1] |= 1u << 6;
            const auto map = Gf2Affine::from_columns(7, cols, 0);
            Reduction r;
            r.reduced = apply_affine(f, map);
            r.type = type_of(r.reduced);
            r.k = k;
            r.monomial = m;
            return r;
        }
    }
    throw std::logic_error("no admissible x_k found although h4 is nonzero");
}

std::vector<std::uint32_t> sweep_subset(const std::vector<std::uint32_t>& f6_words, const Gf2Affine& a) {
    const Gf2Affine inv = inverse(a.linear_part());
    const auto& scatter = kernel::CubicScatter6::instance();
    std::vector<std::uint32_t> out;
    out.reserve(f6_words.size());
    for (std::uint32_t w : f6_words)
        out.push_back(static_cast<std::uint32_t>(cubic6().gather(compose_anf6(scatter(w), inv))));
    return out;
}

std::vector<int> proxy_shards(int shards) {
    std::vector<int> out;
    for (int s = 0; s < shards; s += 100) out.push_back(s);
    return out;
}

namespace {

struct ShardResult {
    int shard = -1;
    std::size_t begin = 0, end = 0;
    std::uint64_t pairs = 0, lookups = 0, hits = 0;
    std::uint64_t matrix = 0;
    std::uint32_t t = 0, g = 0;
};

std::string checkpoint_header(std::uint64_t aset, std::uint64_t t6, std::uint64_t t10, int shards) {
    return "inputs aset=" + hash_hex(aset) + " t6=" + hash_hex(t6) + " t10=" + hash_hex(t10) +
           " shards=" + std::to_string(shards);
}

std::map<int, ShardResult> read_checkpoint(const std::filesystem::path& path, const std::string& header) {
    std::map<int, ShardResult> done;
    if (!std::filesystem::exists(path)) return done;
    std::ifstream in(path);
    std::string line;
    if (!std::getline(in, line) || line != "covrad-sweep-checkpoint 1")
        throw std::runtime_error("unrecognized checkpoint file " + path.string());
    if (!std::getline(in, line) || line != header)
        throw std::runtime_error("input hash mismatch: checkpoint " + path.string() + " was written for other inputs");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tag;
        ShardResult r;
        ss >> tag >> r.shard >> r.begin >> r.end >> r.pairs >> r.lookups >> r.hits >> r.matrix >> r.t >> r.g;
        if (tag != "done" || !ss) throw std::runtime_error("corrupt checkpoint line: " + line);
        done[r.shard] = r;
    }
    return done;
}

void write_checkpoint(const std::filesystem::path& path, const std::string& header,
                      const std::map<int, ShardResult>& done) {
    std::string text = "covrad-sweep-checkpoint 1\n" + header + "\n";
    for (const auto& [s, r] : done)
        text += "done " + std::to_string(r.shard) + " " + std::to_string(r.begin) + " " + std::to_string(r.end) + " " +
                std::to_string(r.pairs) + " " + std::to_string(r.lookups) + " " + std::to_string(r.hits) + " " +
                std::to_string(r.matrix) + " " + std::to_string(r.t) + " " + std::to_string(r.g) + "\n";
    write_text_atomic(path, text);
}

}  // namespace

Verdict sweep_610(const MatrixSet& aset, const NlTable& t6, const NlTable& t10, const SweepOptions& options) {
    require_table(t6, 6, "sweep_610");
    require_table(t10, 10, "sweep_610");
    if (aset.size() == 0) throw std::invalid_argument("sweep_610 needs a non-empty matrix set");
    if (options.shards < 1) throw std::invalid_argument("shard count must be positive");

    Verdict v;
    v.stage = "sweep_610";
    const std::uint64_t aset_hash = aset.content_hash(), t6_hash = t6.content_hash(), t10_hash = t10.content_hash();
    add_input(v, "A", aset_hash);
    add_input(v, "F(fn_6)", t6_hash);
    add_input(v, "F(fn_10)", t10_hash);

    const auto f6 = t6.level_set(6).members.members();
    const auto target = t10.level_set(15).members;
    const auto targets = target.members();

    std::vector<int> wanted = options.only_shards;
    if (wanted.empty())
        for (int s = 0; s < options.shards; ++s) wanted.push_back(s);
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    for (int s : wanted)
        if (s < 0 || s >= options.shards) throw std::invalid_argument("shard index out of range");

    const std::string header = checkpoint_header(aset_hash, t6_hash, t10_hash, options.shards);
    const std::filesystem::path ckpt =
        options.checkpoint_dir.empty() ? std::filesystem::path{} : options.checkpoint_dir / "sweep610.ckpt";
    std::map<int, ShardResult> done;
    if (!ckpt.empty()) done = read_checkpoint(ckpt, header);

    std::vector<int> todo;
    for (int s : wanted)
        if (!done.count(s)) todo.push_back(s);

    const auto run_shard = [&](int shard) {
        ShardResult r;
        r.shard = shard;
        r.begin = aset.size() * shard / options.shards;
        r.end = aset.size() * (shard + 1) / options.shards;
        std::vector<std::uint32_t> diff;
        for (std::size_t ai = r.begin; ai < r.end; ++ai) {
            const auto s = sweep_subset(f6, aset.matrix(ai));
            diff.assign(s.size() - 1, 0);
            for (std::size_t i = 1; i < s.size(); ++i) diff[i - 1] = s[i] ^ s[0];
            for (std::uint32_t t : targets) {
                ++r.pairs;
                bool subset = true;
                for (std::uint32_t d : diff) {
                    ++r.lookups;
                    if (!target.contains(t ^ d)) {
                        subset = false;
                        break;
                    }
                }
                if (subset) {
                    if (!r.hits) {
                        r.matrix = aset.packed()[ai];
                        r.t = t;
                        r.g = s[0] ^ t;
                    }
                    ++r.hits;
                }
            }
        }
        return r;
    };

    const int workers = std::max(1, options.workers);
    const std::size_t batch = static_cast<std::size_t>(workers);
    int newly = 0;
    bool interrupted = false;
    for (std::size_t at = 0; at < todo.size(); at += batch) {
        if (options.stop_after > 0 && newly >= options.stop_after) {
            interrupted = true;
            break;
        }
        const std::size_t n = std::min(batch, todo.size() - at);
        std::vector<ShardResult> results(n);
        parallel_for(n, workers, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) results[i] = run_shard(todo[at + i]);
        });
        for (auto& r : results) done[r.shard] = r;
        newly += static_cast<int>(n);
        if (!ckpt.empty()) write_checkpoint(ckpt, header, done);
        if (options.progress) {
            int have = 0;
            for (int s : wanted) have += done.count(s) ? 1 : 0;
            options.progress(have, static_cast<int>(wanted.size()));
        }
    }

    std::uint64_t matrices = 0, pairs = 0, lookups = 0, hits = 0, completed = 0;
    for (int s : wanted) {
        const auto it = done.find(s);
        if (it == done.end()) continue;
        const auto& r = it->second;
        ++completed;
        matrices += r.end - r.begin;
        pairs += r.pairs;
        lookups += r.lookups;
        if (r.hits && !v.counterexample)
            v.counterexample = Counterexample{r.matrix, r.t, r.g, "S + g inside F_10(15)"};
        hits += r.hits;
    }
    v.set("matrices_total", aset.size());
    v.set("shards_total", static_cast<std::uint64_t>(options.shards));
    v.set("shards_requested", wanted.size());
    v.set("shards_completed", completed);
    v.set("matrices_swept", matrices);
    v.set("targets_per_matrix", targets.size());
    v.set("subset_size", f6.size());
    v.set("pairs_tested", pairs);
    v.set("membership_lookups", lookups);
    v.set("subset_hits", hits);
    v.pass = !interrupted && completed == wanted.size() && hits == 0;
    return v;
}

BooleanFunction witness_function() { return parse_anf("x1x2x3x4+x1x4x6x7+x2x3x6x7+x3x4x5x7", 7); }

Verdict check_witness() {
    Verdict v;
    v.stage = "witness";
    const auto w = witness_function();
    add_input(v, "w", fnv1a(to_hex(w)));
    const int nl3 = nl_r_recursive(w, 3);
    v.set("nl3", static_cast<std::uint64_t>(nl3));
    v.pass = nl3 >= 20;
    return v;
}

namespace {

Verdict table1_stage(const std::array<ClassProperties, kClassCount>& props) {
    Verdict v;
    v.stage = "class_properties";
    std::map<std::pair<int, int>, int> pairs;
    for (int i = 0; i < kClassCount; ++i) {
        const std::string p = "fn_" + std::to_string(i) + ".";
        v.set(p + "deg", props[i].degree);
        v.set(p + "nl2", props[i].nl2);
        v.set(p + "nl3", props[i].nl3);
        v.set(p + "ml2", props[i].ml2);
        pairs[{props[i].degree, props[i].nl3}] = i;
    }
    v.set("distinct_deg_nl3_pairs", pairs.size());
    v.pass = pairs.size() == kClassCount;
    return v;
}

Verdict exclusion_stage(const std::vector<ExclusionEntry>& table, std::vector<TypeLabel>& deep) {
    Verdict v;
    v.stage = "exclusion";
    std::uint64_t by_bound = 0, by_parity = 0;
    for (const auto& e : table) {
        if (e.diagonal) ++by_parity;
        else if (e.excluded) ++by_bound;
        else deep.push_back(e.type);
    }
    v.set("types", table.size());
    v.set("excluded_by_bound", by_bound);
    v.set("excluded_by_parity", by_parity);
    v.set("deep_checked", deep.size());
    const std::vector<TypeLabel> handled{{2, 9}, {2, 10}, {3, 10}, {6, 10}};
    v.pass = std::all_of(deep.begin(), deep.end(), [&](const TypeLabel& t) {
        return std::find(handled.begin(), handled.end(), t) != handled.end();
    });
    if (!v.pass) v.counterexample = Counterexample{0, 0, 0, "a type outside the reduction chain survives the bounds"};
    return v;
}

// Case-2 instances of the three reducible types, reduced and checked against the bound table.
Verdict reduction_stage(const std::vector<ExclusionEntry>& table) {
    Verdict v;
    v.stage = "reduction";
    const auto gens = agl6_generators();
    const auto bound_ok = [&](const TypeLabel& t) {
        for (const auto& e : table)
            if (e.type == t) return e.excluded || t == TypeLabel(6, 10);
        return false;
    };
    // Short words in the generators, re-shifted so that L(1,...,1) = (1,...,1):
    // then x1...x6 o L has no degree-5 terms. A translation applied to both
    // halves costs the degree-4 half only terms of degree <= 3.
    const auto fix_ones = [](const Gf2Affine& l) {
        std::array<std::uint8_t, 6> cols{};
        for (int j = 0; j < 6; ++j) cols[j] = l.column(j);
        const std::uint8_t ones = 0x3f;
        return Gf2Affine::from_columns(6, cols, ones ^ l.linear_part().apply(ones));
    };
    std::vector<Gf2Affine> maps{fix_ones(gens[0]), fix_ones(gens[1])};
    for (const auto& x : gens)
        for (const auto& y : gens) maps.push_back(fix_ones(compose(x, y)));
    const BooleanFunction cubic = parse_anf("x1x2x3+x2x5x6", 6);
    std::uint64_t instances = 0, landed = 0;
    bool ok = true;
    for (const auto& [i, j] : std::vector<std::pair<int, int>>{{2, 10}, {2, 9}, {3, 10}}) {
        for (const auto& l : maps) {
            BooleanFunction f;
            if (j == 10 && i == 2) {
                f = concat(apply_affine(fn_rep(i), l) + cubic, fn_rep(j));
            } else {
                const BooleanFunction moved = apply_affine(fn_rep(j), l) + cubic;
                if (coset_key(moved) == coset_key(fn_rep(j))) continue;  // Case 1 belongs to check_29/310
                f = concat(fn_rep(i), moved);
            }
            ++instances;
            const Reduction r = reduce_to_610(f);
            const bool in_range = r.type.i >= 4 && r.type.i <= 6 && r.type.j >= 7 && r.type.j <= 10;
            if (in_range && bound_ok(r.type)) ++landed;
            else ok = false;
        }
    }
    v.set("instances", instances);
    v.set("landed_in_4-6_x_7-10", landed);
    v.pass = ok && instances > 0;
    return v;
}

}  // namespace

ProofReport prove_rho37(const ProveOptions& options) {
    ProofReport rep;
    const auto props = compute_class_properties(options.workers);
    rep.stages.push_back(table1_stage(props));
    const auto table = exclusion_table(props);
    rep.stages.push_back(exclusion_stage(table, rep.deep_checked));

    const auto t2 = build_nl_table(fn_rep(2), 3, options.workers);
    const auto t3 = build_nl_table(fn_rep(3), 3, options.workers);
    const auto t6 = build_nl_table(fn_rep(6), 3, options.workers);
    const auto t9 = build_nl_table(fn_rep(9), 3, options.workers);
    const auto t10 = build_nl_table(fn_rep(10), 3, options.workers);
    rep.stages.push_back(check_29(t2, t9));
    rep.stages.push_back(check_310(t3, t10));
    rep.stages.push_back(reduction_stage(table));

    Verdict orbit;
    orbit.stage = "orbit_fn10";
    const auto gens = agl6_generators();
    const auto res = bfs_orbit(coset_key(fn_rep(10)), gens);
    orbit.set("orbit_size", res.size);
    orbit.set("distinct_matrices", res.matrices.size());
    orbit.pass = true;
    rep.stages.push_back(orbit);

    SweepOptions sweep;
    sweep.workers = options.workers;
    sweep.checkpoint_dir = options.checkpoint_dir;
    if (!options.full_sweep) sweep.only_shards = proxy_shards(sweep.shards);
    Verdict sv = sweep_610(res.matrices, t6, t10, sweep);
    if (!options.full_sweep) sv.stage = "sweep_610 (1% proxy)";
    rep.stages.push_back(sv);

    bool upper = true;
    for (const auto& s : rep.stages) upper = upper && s.pass;
    rep.upper_bound_proved = upper && options.full_sweep;
    if (options.include_witness) {
        rep.stages.push_back(check_witness());
        rep.lower_bound_proved = rep.stages.back().pass;
    }
    if (rep.upper_bound_proved && rep.lower_bound_proved) rep.conclusion = "rho(3,7) = 20";
    else if (rep.upper_bound_proved) rep.conclusion = "rho(3,7) <= 20 (lower bound not checked)";
    else if (rep.lower_bound_proved && upper) rep.conclusion = "rho(3,7) >= 20; upper bound shown on the proxy sweep only";
    else rep.conclusion = "not proved: a stage failed";
    return rep;
}

std::string verdict_text(const Verdict& v) {
    std::ostringstream out;
    out << "[" << (v.pass ? "PASS" : "FAIL") << "] " << v.stage << "\n";
    for (const auto& [name, hash] : v.inputs) out << "    input " << name << " " << hash << "\n";
    for (const auto& [name, value] : v.counters) out << "    " << name << " = " << value << "\n";
    if (v.counterexample) {
        const auto& c = *v.counterexample;
        out << "    counterexample: matrix=" << c.matrix << " t=" << c.t << " g=" << c.g << " (" << c.detail << ")\n";
    }
    return out.str();
}

namespace {

nlohmann::ordered_json verdict_object(const Verdict& v) {
    nlohmann::ordered_json j;
    j["stage"] = v.stage;
    j["verdict"] = v.pass ? "pass" : "fail";
    j["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [name, hash] : v.inputs) j["inputs"][name] = hash;
    j["counters"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : v.counters) j["counters"][name] = value;
    if (v.counterexample)
        j["counterexample"] = {{"matrix", v.counterexample->matrix},
                               {"t", v.counterexample->t},
                               {"g", v.counterexample->g},
                               {"detail", v.counterexample->detail}};
    return j;
}

}  // namespace

std::string verdict_json(const Verdict& v) { return verdict_object(v).dump(2); }

std::string ProofReport::to_text() const {
    std::string out;
    for (const auto& s : stages) out += verdict_text(s);
    out += "deep-checked types:";
    for (const auto& t : deep_checked) out += " " + t.to_string();
    out += "\nconclusion: " + conclusion + "\n";
    return out;
}

std::string ProofReport::to_json() const {
    nlohmann::ordered_json j;
    j["stages"] = nlohmann::ordered_json::array();
    for (const auto& s : stages) j["stages"].push_back(verdict_object(s));
    j["deep_checked"] = nlohmann::ordered_json::array();
    for (const auto& t : deep_checked) j["deep_checked"].push_back({t.i, t.j});
    j["upper_bound_proved"] = upper_bound_proved;
    j["lower_bound_proved"] = lower_bound_proved;
    j["conclusion"] = conclusion;
    return j.dump(2);
}

}  // namespace covrad
