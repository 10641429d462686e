#include <gtest/gtest.h>

#include <stdexcept>

#include "covrad/boolfn.hpp"
#include "support.hpp"

using namespace covrad;
using namespace covrad::testing;

TEST(Mobius, IsAnInvolution) {
    for (int n = 1; n <= 7; ++n)
        for (int trial = 0; trial < 50; ++trial) {
            const Bits v = random_bits(n);
            EXPECT_EQ(mobius(mobius(v, n), n), v) << "n=" << n;
        }
}

TEST(Mobius, MatchesPointwiseEvaluation) {
    for (int n = 1; n <= 7; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            const Bits anf = random_bits(n);
            EXPECT_EQ(mobius(anf, n), truth_table_of_anf(anf, n));
        }
}

TEST(Mobius, SingleWordAgreesWithWide) {
    for (int n = 1; n <= 6; ++n) {
        const std::uint64_t v = static_cast<std::uint64_t>(random_bits(n));
        EXPECT_EQ(mobius64(v, n), static_cast<std::uint64_t>(mobius(v, n)));
    }
}

TEST(Mobius, RejectsStrayBits) { EXPECT_THROW(mobius(Bits{1} << 20, 4), std::invalid_argument); }

TEST(BooleanFunction, VariableTruthTable) {
    // x1 is 1 at odd points, x2 at points 2,3 mod 4.
    EXPECT_EQ(BooleanFunction::monomial(2, 0b01).truth_table(), Bits{0b1010});
    EXPECT_EQ(BooleanFunction::monomial(2, 0b10).truth_table(), Bits{0b1100});
    EXPECT_EQ(BooleanFunction::monomial(3, 0b111).truth_table(), Bits{0x80});
}

TEST(BooleanFunction, DegreeAndWeight) {
    EXPECT_EQ(degree(BooleanFunction::zero(5)), 0);
    EXPECT_EQ(degree(parse_anf("x1x2x3+x4", 5)), 3);
    EXPECT_EQ(weight(BooleanFunction::one(6)), 64);
    EXPECT_EQ(weight(parse_anf("x1x2x3x4x5x6", 6)), 1);
    // Odd weight forces full degree.
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_function(5);
        if (weight(f) % 2) {
            EXPECT_EQ(degree(f), 5);
        }
    }
}

TEST(Metric, Axioms) {
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng()() % 7);
        const auto f = random_function(n), g = random_function(n), h = random_function(n);
        EXPECT_EQ(distance(f, f), 0);
        EXPECT_EQ(distance(f, g), distance(g, f));
        EXPECT_EQ(distance(f, g) == 0, f == g);
        EXPECT_LE(distance(f, h), distance(f, g) + distance(g, h));
        EXPECT_EQ(distance(f, g), weight(f + g));
    }
    EXPECT_THROW(distance(random_function(3), random_function(4)), std::invalid_argument);
}

TEST(Concat, SplitRoundTrip) {
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 30; ++trial) {
            const auto f1 = random_function(n), f2 = random_function(n);
            const auto f = concat(f1, f2);
            EXPECT_EQ(f.vars(), n + 1);
            const auto [a, b] = split(f);
            EXPECT_EQ(a, f1);
            EXPECT_EQ(b, f2);
            EXPECT_EQ(concat(a, b), f);
        }
}

TEST(Concat, MatchesDefinition) {
    // f1 || f2 = (x_{n+1} + 1) f1 + x_{n+1} f2
    for (int trial = 0; trial < 30; ++trial) {
        const auto f1 = random_function(5), f2 = random_function(5);
        const auto f = concat(f1, f2);
        for (unsigned x = 0; x < 64; ++x) {
            const bool top = x >> 5;
            EXPECT_EQ(f.value(x), top ? f2.value(x & 31) : f1.value(x & 31));
        }
        const auto lift1 = BooleanFunction::from_anf(6, f1.anf());
        const auto lift2 = BooleanFunction::from_anf(6, f2.anf());
        const Bits x6 = BooleanFunction::monomial(6, 1u << 5).truth_table();
        EXPECT_EQ(f.truth_table(), (~x6 & lift1.truth_table()) | (x6 & lift2.truth_table()));
    }
}

TEST(Affine, ComposesPointwise) {
    for (int n = 2; n <= 7; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = random_function(n);
            const auto l = random_affine(n);
            const auto g = apply_affine(f, l);
            for (unsigned x = 0; x < (1u << n); ++x) EXPECT_EQ(g.value(x), f.value(l.apply(x)));
            EXPECT_EQ(apply_affine(f, l.to_map()), g);
            EXPECT_EQ(degree(g), degree(f));
            EXPECT_EQ(weight(g), weight(f));
        }
}

TEST(Homogeneous, PartsPartitionTheAnf) {
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_function(6);
        BooleanFunction sum = BooleanFunction::zero(6);
        for (int r = 0; r <= 6; ++r) {
            const auto h = homogeneous_part(f, r);
            for (unsigned m = 0; m < 64; ++m)
                if (h.coefficient(m)) {
                    EXPECT_EQ(__builtin_popcount(m), r);
                }
            sum += h;
        }
        EXPECT_EQ(sum, f);
        EXPECT_EQ(part_from_degree(f, 4), homogeneous_part(f, 4) + homogeneous_part(f, 5) + homogeneous_part(f, 6));
    }
}

TEST(MonomialSet, SizesAndRoundTrip) {
    for (int n = 1; n <= 7; ++n)
        for (int r = 0; r <= n; ++r) {
            const MonomialSet s(n, r);
            EXPECT_EQ(static_cast<std::uint64_t>(s.size()), binomial(n, r));
            for (int i = 1; i < s.size(); ++i) EXPECT_LT(s[i - 1], s[i]);
            if (s.size() <= 40) {
                const std::uint64_t w = rng()() & ((std::uint64_t{1} << s.size()) - 1);
                EXPECT_EQ(s.gather(s.scatter(w)), w);
                EXPECT_EQ(s.function(w), homogeneous_part(s.function(w), r));
            }
        }
    EXPECT_EQ(MonomialSet(6, 3).index_of(0b000111), 0);
    EXPECT_EQ(MonomialSet(6, 3).index_of(0b000011), -1);
}

TEST(TextForms, HexRoundTrip) {
    for (int n = 1; n <= 7; ++n) {
        const auto f = random_function(n);
        EXPECT_EQ(parse_hex(n, to_hex(f)), f);
    }
    EXPECT_EQ(to_hex(parse_anf("x1", 2)), "a");
    EXPECT_EQ(to_hex(parse_anf("x1x2x3", 3)), "80");
    EXPECT_THROW(parse_hex(3, "zz"), std::invalid_argument);
    EXPECT_THROW(parse_hex(3, "800"), std::invalid_argument);
}

TEST(TextForms, AnfRoundTrip) {
    for (int n = 1; n <= 7; ++n) {
        const auto f = random_function(n);
        EXPECT_EQ(parse_anf(to_anf_string(f), n), f);
    }
    EXPECT_EQ(to_anf_string(parse_anf("x4x2+x1+1", 4)), "1+x1+x2x4");
    EXPECT_EQ(parse_anf("0").anf(), Bits{0});
    EXPECT_EQ(parse_anf("x2x5").vars(), 5);
    EXPECT_THROW(parse_anf("x1*y"), std::invalid_argument);
    EXPECT_THROW(parse_anf("x9"), std::invalid_argument);
}

TEST(Binomial, SmallValues) {
    EXPECT_EQ(binomial(6, 3), 20u);
    EXPECT_EQ(binomial(7, 0), 1u);
    EXPECT_EQ(binomial(5, 6), 0u);
}
