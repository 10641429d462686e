#include <gtest/gtest.h>

#include <map>
#include <set>
#include <stdexcept>

#include "covrad/field.hpp"
#include "support.hpp"

using namespace covrad;
using namespace covrad::testing;

TEST(FiniteField, AxiomsOnEverySupportedField) {
    for (const int q : FiniteField::supported_sizes()) {
        const auto& f = FiniteField::get(q);
        EXPECT_EQ(f.q(), q);
        for (int a = 0; a < q; ++a) {
            EXPECT_EQ(f.add(a, 0), a);
            EXPECT_EQ(f.mul(a, 1), a);
            EXPECT_EQ(f.add(a, f.neg(a)), 0);
            if (a) {
                EXPECT_EQ(f.mul(a, f.inv(a)), 1) << "q=" << q << " a=" << a;
            }
            for (int b = 0; b < q; ++b) {
                EXPECT_EQ(f.add(a, b), f.add(b, a));
                EXPECT_EQ(f.mul(a, b), f.mul(b, a));
                EXPECT_EQ(f.sub(f.add(a, b), b), a);
                for (int c = 0; c < q; ++c) {
                    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }
}

TEST(FiniteField, GeneratorIsPrimitive) {
    for (const int q : FiniteField::supported_sizes()) {
        const auto& f = FiniteField::get(q);
        std::set<int> seen;
        for (int i = 0; i < q - 1; ++i) seen.insert(f.exp(i));
        EXPECT_EQ(static_cast<int>(seen.size()), q - 1) << "q=" << q;
        EXPECT_EQ(f.order(f.alpha()), q - 1);
        for (int a = 1; a < q; ++a) EXPECT_EQ(f.exp(f.log(a)), a);
    }
}

TEST(FiniteField, QuadraticTraceLiesInBaseField) {
    for (const int q : FiniteField::supported_sizes()) {
        const auto& f = FiniteField::get(q);
        EXPECT_LT(f.quadratic_trace_of_generator(), q);
    }
}

TEST(FiniteField, Unsupported) {
    EXPECT_THROW(FiniteField::get(6), std::invalid_argument);
    EXPECT_THROW(FiniteField::get(1), std::invalid_argument);
}

TEST(FiniteField, TextRoundTrip) {
    for (const int q : FiniteField::supported_sizes()) {
        const auto& f = FiniteField::get(q);
        for (int a = 0; a < q; ++a) EXPECT_EQ(f.parse(f.to_string(a)), a);
    }
}

TEST(GroupOrder, Formula) {
    EXPECT_EQ(gl_order(3, 2), 168u);
    EXPECT_EQ(agl_order(3, 2), 1344u);
    EXPECT_EQ(gl_order(2, 3), 48u);
    EXPECT_EQ(agl_order(2, 3), 432u);
    EXPECT_EQ(agl_order(2, 2), 24u);
}

TEST(AffineMap, ActionLaws) {
    for (const int q : {2, 3, 4, 5}) {
        const auto& f = FiniteField::get(q);
        const auto [a, b] = agl_generators(2, f);
        const auto ab = compose(a, b);
        const auto id = AffineMap::identity(f, 2);
        EXPECT_TRUE(compose(a, id) == a);
        EXPECT_TRUE(compose(inverse(a), a).is_identity());
        EXPECT_TRUE(compose(compose(a, b), ab) == compose(a, compose(b, ab)));
        for (int x0 = 0; x0 < q; ++x0)
            for (int x1 = 0; x1 < q; ++x1) {
                const std::vector<FieldElem> x{static_cast<FieldElem>(x0), static_cast<FieldElem>(x1)};
                EXPECT_EQ(ab.apply(x), a.apply(b.apply(x)));
            }
        EXPECT_TRUE(power(a, 0).is_identity());
        EXPECT_TRUE(power(a, 3) == compose(a, compose(a, a)));
    }
}

TEST(AffineMap, RejectsSingular) {
    const auto& f = FiniteField::get(3);
    EXPECT_THROW(AffineMap::linear(f, 2, {1, 2, 2, 1}), std::invalid_argument);
    EXPECT_THROW(AffineMap::linear(f, 2, {1, 0, 0}), std::invalid_argument);
    EXPECT_NO_THROW(AffineMap::linear(f, 2, {1, 1, 0, 1}));
}

TEST(AffineMap, MatrixTextRoundTrip) {
    const auto& f = FiniteField::get(4);
    const auto [a, b] = agl_generators(3, f);
    EXPECT_EQ(parse_matrix(f, 3, format_matrix(a)), a.matrix());
    EXPECT_EQ(parse_matrix(f, 3, format_matrix(b)), b.matrix());
}

TEST(Gf2Affine, PackAndMapRoundTrip) {
    for (int trial = 0; trial < 50; ++trial) {
        const auto l = random_affine(6);
        EXPECT_EQ(Gf2Affine::from_packed_matrix(6, l.pack_matrix()), l.linear_part());
        EXPECT_EQ(Gf2Affine::from_map(l.to_map()), l);
        const auto m = random_affine(6);
        for (unsigned x = 0; x < 64; ++x) {
            EXPECT_EQ(compose(l, m).apply(x), l.apply(m.apply(x)));
            EXPECT_EQ(inverse(l).apply(l.apply(x)), x);
        }
    }
    const std::vector<std::uint8_t> singular{1, 2, 3};
    EXPECT_THROW(Gf2Affine::from_columns(3, singular, 0), std::invalid_argument);
}

// Element orders found by repeated composition, independent of max_element_order.
static std::size_t brute_max_order(const std::vector<AffineMap>& group) {
    std::size_t best = 1;
    for (const auto& g : group) {
        std::size_t k = 1;
        AffineMap p = g;
        while (!p.is_identity()) {
            p = compose(p, g);
            ++k;
        }
        best = std::max(best, k);
    }
    return best;
}

TEST(Generation, TwoElementsGenerate) {
    const std::map<std::pair<int, int>, std::uint64_t> cases{{{2, 2}, 0}, {{3, 2}, 0}, {{2, 3}, 0}, {{2, 4}, 0}};
    for (const auto& [nq, unused] : cases) {
        const auto [n, q] = nq;
        const auto& f = FiniteField::get(q);
        const auto [ga, gb] = gl_generators(n, f);
        const auto [a, b] = agl_generators(n, f);
        const std::vector<AffineMap> gl{ga, gb}, agl{a, b};
        EXPECT_EQ(generate_group(gl, 1u << 22), gl_order(n, q)) << n << "," << q;
        EXPECT_EQ(generate_group(agl, 1u << 22), agl_order(n, q)) << n << "," << q;
    }
}

TEST(Generation, NotCyclic) {
    for (const int n : {2, 3}) {
        const auto& f = FiniteField::get(2);
        const auto [a, b] = agl_generators(n, f);
        const std::vector<AffineMap> gens{a, b};
        const auto group = enumerate_group(gens, 1u << 20);
        const std::size_t m = brute_max_order(group);
        EXPECT_EQ(max_element_order(gens, 1u << 20), m);
        EXPECT_LT(m, agl_order(n, 2));
    }
    // AGL(2,2) is the symmetric group on the four points of the plane.
    const auto [a, b] = agl_generators(2, FiniteField::get(2));
    const std::vector<AffineMap> gens{a, b};
    EXPECT_EQ(max_element_order(gens, 100), 4u);
}

TEST(Generation, ClosureCap) {
    const auto [a, b] = agl_generators(3, FiniteField::get(3));
    const std::vector<AffineMap> gens{a, b};
    EXPECT_THROW(generate_group(gens, 1000), std::length_error);
}
