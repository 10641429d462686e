#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "covrad/classify.hpp"
#include "covrad/nonlin.hpp"
#include "support.hpp"

using namespace covrad;
using namespace covrad::testing;

namespace {

const std::array<ClassProperties, kClassCount>& props() {
    static const auto p = compute_class_properties(2);
    return p;
}

}  // namespace

TEST(Representatives, ParseAndDegree) {
    EXPECT_EQ(fn_rep_anf(0), "0");
    EXPECT_EQ(fn_rep_anf(7), "x1x2x3x4x5x6");
    for (int i = 0; i < kClassCount; ++i) {
        const auto f = fn_rep(i);
        EXPECT_EQ(f.vars(), 6);
        // No monomials of degree 1..3.
        for (unsigned m = 1; m < 64; ++m)
            if (__builtin_popcount(m) <= 3) {
                EXPECT_FALSE(f.coefficient(m)) << i;
            }
        EXPECT_EQ(props()[i].degree, degree(f));
    }
    EXPECT_THROW(fn_rep(11), std::out_of_range);
}

TEST(Representatives, KnownNonlinearities) {
    // fn_7 is a single point, fn_4 a 2-point flat indicator; both are
    // at distance equal to their weight from every low-degree function.
    EXPECT_EQ(props()[7].nl3, 1);
    EXPECT_EQ(props()[7].nl2, 1);
    EXPECT_EQ(props()[4].nl3, 2);
    EXPECT_EQ(props()[0].nl2, 0);
    for (int i = 0; i < kClassCount; ++i) EXPECT_LE(props()[i].nl3, props()[i].nl2);
}

TEST(Representatives, Ml2IsAMaximumOverShifts) {
    // ml2(f) >= nl2(f + g) for every cubic g, and g = 0 is allowed.
    const MonomialSet cubics(6, 3);
    for (int i = 0; i < kClassCount; ++i) {
        EXPECT_GE(props()[i].ml2, props()[i].nl2);
        for (int trial = 0; trial < 20; ++trial) {
            const auto g = cubics.function(rng()() & 0xfffff);
            EXPECT_GE(props()[i].ml2, nl_r_recursive(fn_rep(i) + g, 2)) << i;
        }
    }
    // fn_0 + x1x2x3 is a cubic at distance 8 from RM(2,6), so ml2(fn_0) > 0.
    EXPECT_EQ(nl_r_recursive(parse_anf("x1x2x3", 6), 2), 8);
    EXPECT_GE(props()[0].ml2, 8);
}

TEST(Representatives, DistinctDegreeNl3Pairs) {
    std::set<std::pair<int, int>> pairs;
    for (const auto& p : props()) pairs.insert({p.degree, p.nl3});
    EXPECT_EQ(pairs.size(), static_cast<std::size_t>(kClassCount));
}

TEST(Classify, RepresentativesMapToThemselves) {
    for (int i = 0; i < kClassCount; ++i) EXPECT_EQ(classify_coset(fn_rep(i)), i);
}

TEST(Classify, InvariantUnderAffineMapsAndCubicShifts) {
    for (int i = 0; i < kClassCount; ++i)
        for (int trial = 0; trial < 5; ++trial) {
            const auto f = apply_affine(fn_rep(i), random_affine(6)) + random_low_degree(6, 3);
            EXPECT_EQ(classify_coset(f), i);
        }
    EXPECT_THROW(classify_coset(random_function(5)), std::invalid_argument);
}

TEST(TypeLabel, Normalizes) {
    EXPECT_EQ(TypeLabel(10, 2), TypeLabel(2, 10));
    EXPECT_EQ(TypeLabel(9, 2).to_string(), "(2,9)");
    EXPECT_LT(TypeLabel(2, 9), TypeLabel(2, 10));
    const auto f = concat(apply_affine(fn_rep(9), random_affine(6)), fn_rep(2) + random_low_degree(6, 3));
    EXPECT_EQ(type_of(f), TypeLabel(2, 9));
    EXPECT_THROW(type_of(fn_rep(3)), std::invalid_argument);
}

TEST(Exclusion, TableShape) {
    const auto table = exclusion_table(props());
    ASSERT_EQ(table.size(), 66u);
    int diagonal = 0;
    std::vector<TypeLabel> deep;
    for (const auto& e : table) {
        EXPECT_LE(e.type.i, e.type.j);
        if (e.diagonal) {
            ++diagonal;
            EXPECT_TRUE(e.excluded);
        } else if (!e.excluded) {
            deep.push_back(e.type);
        }
        const auto& a = props()[e.type.i];
        const auto& b = props()[e.type.j];
        EXPECT_EQ(e.bound, std::min(a.nl3 + b.ml2, b.nl3 + a.ml2));
    }
    EXPECT_EQ(diagonal, 11);
    EXPECT_EQ(deep, (std::vector<TypeLabel>{{2, 9}, {2, 10}, {3, 10}, {6, 10}}));
}

TEST(Exclusion, Csv) {
    const auto csv = exclusion_csv(exclusion_table(props()));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "i,j,bound,excluded,rule");
    int rows = 0, deep = 0;
    while (std::getline(in, line)) {
        ++rows;
        if (line.find("deep-check") != std::string::npos) ++deep;
    }
    EXPECT_EQ(rows, 66);
    EXPECT_EQ(deep, 4);
}

TEST(Bounds, UpperBoundAndChain) {
    EXPECT_EQ(rho_upper_bound(props()), 22);
    EXPECT_EQ(rho_upper_bound(props(), {1, 2}), 22);
    EXPECT_EQ(rho_upper_bound(props(), {4}), props()[4].nl3 + props()[4].ml2);
    const auto chain = chain_bounds(20);
    ASSERT_EQ(chain.size(), 6u);
    std::vector<int> values;
    for (const auto& c : chain) values.push_back(c.value);
    EXPECT_EQ(values, (std::vector<int>{60, 156, 372, 28, 88, 244}));
    EXPECT_EQ(chain[0].derivation, "rho(2,7) + rho(3,7) = 40 + 20");
    // The chain is linear in rho(3,7).
    const auto shifted = chain_bounds(21);
    EXPECT_EQ(shifted[0].value, 61);
}
