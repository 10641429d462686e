#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <stdexcept>

#include "covrad/classify.hpp"
#include "covrad/nonlin.hpp"
#include "covrad/orbit.hpp"
#include "covrad/verify.hpp"
#include "support.hpp"

using namespace covrad;
using namespace covrad::testing;
namespace fs = std::filesystem;

namespace {

const NlTable& table(int fn) {
    static std::map<int, NlTable> cache;
    auto it = cache.find(fn);
    if (it == cache.end()) it = cache.emplace(fn, build_nl_table(fn_rep(fn), 3, 2)).first;
    return it->second;
}

MatrixSet random_matrices(int count) {
    std::vector<std::uint64_t> packed;
    for (int i = 0; i < count; ++i) packed.push_back(random_affine(6, rng(), false).pack_matrix());
    return MatrixSet(packed);
}

// Every entry set to k: a doctored table that makes inclusion tests succeed.
NlTable flat_table(int fn, int k) { return NlTable(fn_rep(fn), 3, std::vector<std::uint8_t>(1u << 20, k)); }

fs::path scratch_dir(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("covrad_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST(Check29, Counters) {
    const auto v = check_29(table(2), table(9));
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.counter("candidates"), 5760u);
    EXPECT_EQ(v.counter("tested_per_candidate"), 1920u);
    EXPECT_EQ(v.counter("satisfying"), 0u);
    EXPECT_FALSE(v.counterexample);
    EXPECT_EQ(v.inputs.size(), 2u);
}

TEST(Check29, DoctoredTableFailsWithCounterexample) {
    const auto fake = flat_table(9, 15);
    const auto v = check_29(table(2), fake);
    EXPECT_FALSE(v.pass);
    ASSERT_TRUE(v.counterexample);
    EXPECT_EQ(v.counter("satisfying"), v.counter("candidates"));
    EXPECT_THROW(check_29(table(3), table(9)), std::invalid_argument);
}

TEST(Check310, Counters) {
    const auto v = check_310(table(3), table(10));
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.counter("round1_candidates"), 974592u);
    EXPECT_EQ(v.counter("round1_survivors"), 6912u);
    EXPECT_EQ(v.counter("round2_satisfying"), 0u);
}

TEST(Check310, SurvivorsRecountedDirectly) {
    // Round 1 by hand on a slice of the candidates.
    const auto& t3 = table(3);
    const auto f10_7 = table(10).level_set(7).members.members();
    std::uint64_t survivors = 0;
    for (std::uint32_t g = 0; g < t3.size(); ++g) {
        if (t3[g] != 12 && t3[g] != 14) continue;
        bool all = true;
        for (const auto h : f10_7) all = all && t3[h ^ g] == 14;
        survivors += all;
    }
    EXPECT_EQ(survivors, check_310(t3, table(10)).counter("round1_survivors"));
}

TEST(Reduction, KEqualsFiveForLeadingMonomial) {
    // f1 + f2 = x1...x6 + x1x2x3x4: k = 5 is the first variable outside x1x2x3x4.
    const auto f = concat(BooleanFunction::zero(6), parse_anf("x1x2x3x4x5x6+x1x2x3x4", 6));
    const auto r = reduce_to_610(f);
    EXPECT_EQ(r.monomial, 0b001111u);
    EXPECT_EQ(r.k, 5);
}

TEST(Reduction, ShapeErrors) {
    EXPECT_THROW(reduce_to_610(concat(fn_rep(2), fn_rep(2))), std::invalid_argument);
    EXPECT_THROW(reduce_to_610(concat(fn_rep(2), fn_rep(9))), std::invalid_argument);  // h4 vanishes
    EXPECT_THROW(reduce_to_610(fn_rep(9)), std::invalid_argument);
}

TEST(Reduction, PreservesNl3AndLandsInRange) {
    const auto gens = agl6_generators();
    int checked = 0;
    for (int trial = 0; checked < 5 && trial < 100; ++trial) {
        // Linear L fixing the all-ones point, so x1...x6 o L = x1...x6.
        auto l = random_affine(6, rng(), false);
        std::vector<std::uint8_t> cols(6);
        for (int j = 0; j < 6; ++j) cols[j] = l.column(j);
        l = Gf2Affine::from_columns(6, cols, static_cast<std::uint8_t>(0x3f ^ l.apply(0x3f)));
        const auto f1 = apply_affine(fn_rep(2), l) + random_low_degree(6, 3);
        const auto f = concat(f1, fn_rep(10));
        const auto r = reduce_to_610(f);
        EXPECT_GE(r.type.i, 4);
        EXPECT_LE(r.type.i, 6);
        EXPECT_GE(r.type.j, 7);
        EXPECT_LE(r.type.j, 10);
        EXPECT_EQ(nl_r_recursive(r.reduced, 3), nl_r_recursive(f, 3));
        // Same value through the covering condition on the reduced halves.
        const auto [a, b] = split(r.reduced);
        const int nl = nl_r_recursive(r.reduced, 3);
        const auto ta = build_nl_table(a, 3), tb = build_nl_table(b, 3);
        EXPECT_TRUE(check_covering_condition(ta, tb, nl).holds);
        EXPECT_FALSE(check_covering_condition(ta, tb, nl + 1).holds);
        ++checked;
    }
    EXPECT_EQ(checked, 5);
}

TEST(Sweep, SubsetProjectionKeepsLevel) {
    // nl2(fn_6 o A^-1 + T3(s o A^-1)) = 6 for s in F_6(6).
    const auto f6 = table(6).level_set(6).members.members();
    ASSERT_EQ(f6.size(), 32u);
    const MonomialSet cubics(6, 3);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = random_affine(6, rng(), false);
        const auto s = sweep_subset(f6, a);
        ASSERT_EQ(s.size(), f6.size());
        const auto moved = apply_affine(fn_rep(6), inverse(a));
        for (std::size_t i = 0; i < s.size(); i += 5)
            EXPECT_EQ(nl_r_recursive(moved + cubics.function(s[i]), 2), 6);
    }
    EXPECT_EQ(sweep_subset(f6, Gf2Affine::identity(6)), f6);
}

TEST(Sweep, IdentitySliceFromTablesAlone) {
    const auto f6 = table(6).level_set(6).members.members();
    const auto& t10 = table(10);
    std::uint64_t full = 0, pairs = 0;
    for (std::uint32_t t = 0; t < t10.size(); ++t) {
        if (t10[t] != 15) continue;
        ++pairs;
        const std::uint32_t g = f6[0] ^ t;
        bool inside = true;
        for (const auto s : f6) inside = inside && t10[s ^ g] == 15;
        full += inside;
    }
    EXPECT_EQ(full, 0u);
    const MatrixSet id({Gf2Affine::identity(6).pack_matrix()});
    SweepOptions o;
    o.shards = 1;
    const auto v = sweep_610(id, table(6), t10, o);
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.counter("pairs_tested"), pairs);
    EXPECT_EQ(v.counter("subset_hits"), full);
}

TEST(Sweep, DoctoredTableYieldsReproducibleCounterexample) {
    const auto fake = flat_table(10, 15);
    const auto aset = random_matrices(3);
    SweepOptions o;
    o.shards = 3;
    const auto v = sweep_610(aset, table(6), fake, o);
    EXPECT_FALSE(v.pass);
    ASSERT_TRUE(v.counterexample);
    const auto& c = *v.counterexample;
    EXPECT_TRUE(aset.contains(c.matrix));
    // Targeted recheck of the reported (A, t, g).
    const auto s = sweep_subset(table(6).level_set(6).members.members(), Gf2Affine::from_packed_matrix(6, c.matrix));
    EXPECT_EQ(c.g, s[0] ^ c.t);
    for (const auto x : s) EXPECT_EQ(fake[x ^ c.g], 15);
}

TEST(Sweep, WorkerCountDoesNotChangeCounters) {
    const auto aset = random_matrices(40);
    SweepOptions a, b;
    a.shards = b.shards = 8;
    a.workers = 1;
    b.workers = 3;
    const auto va = sweep_610(aset, table(6), table(10), a);
    const auto vb = sweep_610(aset, table(6), table(10), b);
    EXPECT_EQ(va.counters, vb.counters);
    EXPECT_TRUE(va.pass);
}

TEST(Sweep, CheckpointResume) {
    const auto aset = random_matrices(60);
    const auto dir = scratch_dir("resume");
    SweepOptions o;
    o.shards = 12;
    o.checkpoint_dir = dir;
    o.stop_after = 5;
    const auto partial = sweep_610(aset, table(6), table(10), o);
    EXPECT_FALSE(partial.pass);
    EXPECT_EQ(partial.counter("shards_completed"), 5u);
    ASSERT_TRUE(fs::exists(dir / "sweep610.ckpt"));

    o.stop_after = 0;
    int progress_calls = 0;
    o.progress = [&](int, int) { ++progress_calls; };
    const auto resumed = sweep_610(aset, table(6), table(10), o);
    EXPECT_EQ(progress_calls, 7);

    SweepOptions clean;
    clean.shards = 12;
    const auto straight = sweep_610(aset, table(6), table(10), clean);
    EXPECT_TRUE(resumed.pass);
    EXPECT_EQ(resumed.counters, straight.counters);

    // Different inputs against the same checkpoint are refused.
    try {
        sweep_610(random_matrices(61), table(6), table(10), o);
        FAIL() << "stale checkpoint accepted";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("input hash mismatch"), std::string::npos);
    }
    fs::remove_all(dir);
}

TEST(Sweep, ProxyShards) {
    const auto p = proxy_shards(1000);
    ASSERT_EQ(p.size(), 10u);
    EXPECT_EQ(p.front(), 0);
    EXPECT_EQ(p.back(), 900);
    SweepOptions o;
    o.only_shards = {1000};
    EXPECT_THROW(sweep_610(random_matrices(2), table(6), table(10), o), std::invalid_argument);
}

TEST(Verdict, Rendering) {
    const auto v = check_29(table(2), table(9));
    const auto text = verdict_text(v);
    EXPECT_EQ(text.rfind("[PASS] check_29", 0), 0u);
    EXPECT_NE(text.find("candidates = 5760"), std::string::npos);
    const auto json = verdict_json(v);
    EXPECT_NE(json.find("\"verdict\": \"pass\""), std::string::npos);
    EXPECT_THROW(v.counter("nope"), std::out_of_range);
}

TEST(Soundness, CoveringConditionMatchesNl3) {
    // Covering-condition verdicts at nl3 - 1, nl3, nl3 + 1 on random 6-variable pairs.
    for (int trial = 0; trial < 10; ++trial) {
        const auto f1 = random_function(6), f2 = random_function(6);
        const int nl = nl_r_recursive(concat(f1, f2), 3);
        const auto t1 = build_nl_table(f1, 3), t2 = build_nl_table(f2, 3);
        for (const int t : {nl - 1, nl, nl + 1}) EXPECT_EQ(check_covering_condition(t1, t2, t).holds, nl >= t);
    }
}
