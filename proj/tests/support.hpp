#pragma once

// Shared helpers for the test binaries: seeded random inputs and small
// independent oracles that avoid the library's fast paths.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "covrad/boolfn.hpp"
#include "covrad/field.hpp"

namespace covrad::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed2026u);
    return gen;
}

inline Bits random_bits(int n, std::mt19937_64& g = rng()) {
    const Bits v = (Bits{g()} << 64) | g();
    return v & bits_mask(n);
}

inline BooleanFunction random_function(int n, std::mt19937_64& g = rng()) {
    return BooleanFunction::from_truth_table(n, random_bits(n, g));
}

/// Random element of RM(r, n).
inline BooleanFunction random_low_degree(int n, int r, std::mt19937_64& g = rng()) {
    Bits anf = random_bits(n, g);
    for (unsigned m = 0; m < (1u << n); ++m)
        if (__builtin_popcount(m) > r) anf &= ~(Bits{1} << m);
    return BooleanFunction::from_anf(n, anf);
}

inline Gf2Affine random_affine(int n, std::mt19937_64& g = rng(), bool with_shift = true) {
    for (;;) {
        std::vector<std::uint8_t> cols(n);
        for (auto& c : cols) c = static_cast<std::uint8_t>(g() & ((1u << n) - 1));
        // Rank by elimination on a copy.
        auto m = cols;
        int rank = 0;
        for (int bit = 0; bit < n && rank < n; ++bit) {
            auto it = std::find_if(m.begin() + rank, m.end(), [&](std::uint8_t c) { return (c >> bit) & 1u; });
            if (it == m.end()) continue;
            std::swap(*it, m[rank]);
            for (int k = 0; k < n; ++k)
                if (k != rank && ((m[k] >> bit) & 1u)) m[k] ^= m[rank];
            ++rank;
        }
        if (rank < n) continue;
        const auto shift = with_shift ? static_cast<std::uint8_t>(g() & ((1u << n) - 1)) : std::uint8_t{0};
        return Gf2Affine::from_columns(n, cols, shift);
    }
}

/// Value of the ANF at a point, monomial by monomial.
inline bool eval_anf(Bits anf, int n, unsigned point) {
    bool v = false;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (((anf >> m) & 1u) && (point & m) == m) v = !v;
    return v;
}

inline Bits truth_table_of_anf(Bits anf, int n) {
    Bits tt = 0;
    for (unsigned x = 0; x < (1u << n); ++x)
        if (eval_anf(anf, n, x)) tt |= Bits{1} << x;
    return tt;
}

inline int hamming(Bits a, Bits b) { return popcount(a ^ b); }

/// Truth tables of every codeword of RM(r, n), built from scratch.
inline std::vector<Bits> reed_muller_words(int r, int n) {
    std::vector<Bits> monos;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (__builtin_popcount(m) <= r) monos.push_back(truth_table_of_anf(Bits{1} << m, n));
    std::vector<Bits> words{0};
    for (const Bits m : monos) {
        const std::size_t size = words.size();
        for (std::size_t i = 0; i < size; ++i) words.push_back(words[i] ^ m);
    }
    return words;
}

inline int oracle_nl(Bits tt, const std::vector<Bits>& code) {
    int best = 1 << 30;
    for (const Bits c : code) best = std::min(best, hamming(tt, c));
    return best;
}

}  // namespace covrad::testing
