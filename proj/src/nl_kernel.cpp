#include "covrad/nl_kernel.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "covrad/boolfn.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace covrad::kernel {

namespace {

// For each byte position of a 32-bit ANF, the key bits contributed by that byte.
struct KeyLut {
    std::array<std::array<std::uint32_t, 256>, 4> by_byte{};

    KeyLut() {
        std::array<int, 32> slot{};
        slot.fill(-1);
        int next = 0;
        for (int d = 2; d <= 5; ++d)
            for (unsigned mask = 0; mask < 32; ++mask)
                if (__builtin_popcount(mask) == d) slot[mask] = next++;
        for (int b = 0; b < 4; ++b)
            for (unsigned v = 0; v < 256; ++v) {
                std::uint32_t key = 0;
                for (int i = 0; i < 8; ++i)
                    if ((v >> i) & 1u) {
                        const int s = slot[8 * b + i];
                        if (s >= 0) key |= 1u << s;
                    }
                by_byte[b][v] = key;
            }
    }
};

const KeyLut& key_lut() {
    static const KeyLut lut;
    return lut;
}

}  // namespace

std::uint32_t Nl1Table5::key(std::uint32_t anf5) {
    const auto& lut = key_lut().by_byte;
    return lut[0][anf5 & 0xFFu] | lut[1][(anf5 >> 8) & 0xFFu] | lut[2][(anf5 >> 16) & 0xFFu] |
           lut[3][anf5 >> 24];
}

const Nl1Table5& Nl1Table5::instance() {
    static const Nl1Table5 table;
    return table;
}

Nl1Table5::Nl1Table5() : values_(std::size_t{1} << kKeyBits) {
    std::array<unsigned, 32> masks_by_slot{};
    int next = 0;
    for (int d = 2; d <= 5; ++d)
        for (unsigned mask = 0; mask < 32; ++mask)
            if (__builtin_popcount(mask) == d) masks_by_slot[next++] = mask;

    const auto tt_of_slots = [&](std::uint32_t bits, int first_slot) {
        std::uint64_t anf = 0;
        for (int i = 0; bits; ++i, bits >>= 1)
            if (bits & 1u) anf |= std::uint64_t{1} << masks_by_slot[first_slot + i];
        return static_cast<std::uint32_t>(mobius64(anf, 5));
    };

    std::array<std::uint32_t, kBlock> quad_tt{};
    for (std::uint32_t lo = 0; lo < kBlock; ++lo) quad_tt[lo] = tt_of_slots(lo, 0);
    std::array<std::uint32_t, 32> linear_tt{};
    for (unsigned a = 0; a < 32; ++a) {
        std::uint32_t tt = 0;
        for (unsigned x = 0; x < 32; ++x)
            if (__builtin_popcount(a & x) & 1) tt |= 1u << x;
        linear_tt[a] = tt;
    }

    for (std::uint32_t hi = 0; hi < (1u << (kKeyBits - 10)); ++hi) {
        const std::uint32_t tt_hi = tt_of_slots(hi, 10);
        std::uint8_t* out = values_.data() + (std::size_t{hi} << 10);
        for (std::uint32_t lo = 0; lo < kBlock; ++lo) {
            const std::uint32_t tt = tt_hi ^ quad_tt[lo];
            int best = 32;
            for (unsigned a = 0; a < 32; ++a) {
                const int w = __builtin_popcount(tt ^ linear_tt[a]);
                best = std::min(best, std::min(w, 32 - w));
            }
            out[lo] = static_cast<std::uint8_t>(best);
        }
    }
}

int Nl1Table5::min_pair_sum_scalar(std::uint32_t anf1, std::uint32_t anf2) const {
    const std::uint32_t k1 = key(anf1), k2 = key(anf2);
    const std::uint8_t* b1 = values_.data() + (k1 & ~(kBlock - 1));
    const std::uint8_t* b2 = values_.data() + (k2 & ~(kBlock - 1));
    const std::uint32_t c = (k1 ^ k2) & (kBlock - 1);
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t h = 0; h < kBlock; ++h) best = std::min(best, b1[h] + b2[h ^ c]);
    return best;
}

#if defined(__AVX2__)

namespace {

struct ShuffleMasks {
    __m256i xor_index[16];
    ShuffleMasks() {
        for (int m = 0; m < 16; ++m) {
            alignas(32) std::uint8_t idx[32];
            for (int u = 0; u < 32; ++u) idx[u] = static_cast<std::uint8_t>((u & 15) ^ m);
            xor_index[m] = _mm256_load_si256(reinterpret_cast<const __m256i*>(idx));
        }
    }
};

const ShuffleMasks& shuffle_masks() {
    static const ShuffleMasks masks;
    return masks;
}

}  // namespace

int Nl1Table5::min_pair_sum(std::uint32_t anf1, std::uint32_t anf2) const {
    const std::uint32_t k1 = key(anf1), k2 = key(anf2);
    const std::uint8_t* b1 = values_.data() + (k1 & ~(kBlock - 1));
    const std::uint8_t* b2 = values_.data() + (k2 & ~(kBlock - 1));
    const std::uint32_t c = (k1 ^ k2) & (kBlock - 1);
    const std::uint32_t chunk_xor = c >> 5;
    const std::uint32_t lane_xor = c & 31u;
    const __m256i shuffle = shuffle_masks().xor_index[lane_xor & 15u];
    const bool swap_lanes = (lane_xor & 16u) != 0;

    __m256i acc = _mm256_set1_epi8(static_cast<char>(0x7F));
    for (std::uint32_t j = 0; j < kBlock / 32; ++j) {
        const __m256i v1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b1 + 32 * j));
        __m256i v2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b2 + 32 * (j ^ chunk_xor)));
        if (swap_lanes) v2 = _mm256_permute2x128_si256(v2, v2, 0x01);
        v2 = _mm256_shuffle_epi8(v2, shuffle);
        acc = _mm256_min_epu8(acc, _mm256_add_epi8(v1, v2));
    }
    __m128i m = _mm_min_epu8(_mm256_castsi256_si128(acc), _mm256_extracti128_si256(acc, 1));
    m = _mm_min_epu8(m, _mm_srli_si128(m, 8));
    m = _mm_min_epu8(m, _mm_srli_si128(m, 4));
    m = _mm_min_epu8(m, _mm_srli_si128(m, 2));
    m = _mm_min_epu8(m, _mm_srli_si128(m, 1));
    return _mm_extract_epi8(m, 0);
}

#else

int Nl1Table5::min_pair_sum(std::uint32_t anf1, std::uint32_t anf2) const {
    return min_pair_sum_scalar(anf1, anf2);
}

#endif

const CubicScatter6& CubicScatter6::instance() {
    static const CubicScatter6 scatter = [] {
        CubicScatter6 s{};
        std::vector<unsigned> masks;
        for (unsigned mask = 0; mask < 64; ++mask)
            if (__builtin_popcount(mask) == 3) masks.push_back(mask);
        for (std::uint32_t w = 0; w < 1024; ++w) {
            std::uint64_t lo = 0, hi = 0;
            for (int i = 0; i < 10; ++i) {
                if ((w >> i) & 1u) lo |= std::uint64_t{1} << masks[i];
                if ((w >> i) & 1u) hi |= std::uint64_t{1} << masks[10 + i];
            }
            s.lo[w] = lo;
            s.hi[w] = hi;
        }
        return s;
    }();
    return scatter;
}

int nl3_vars7(std::uint64_t anf_lo, std::uint64_t anf_hi) {
    // f = f1 || f2 with f1 = anf_lo, f2 = anf_lo ^ anf_hi (ANF of the x7 = 1 half).
    const std::uint64_t f1 = anf_lo;
    const std::uint64_t f2 = anf_lo ^ anf_hi;
    const auto& scatter = CubicScatter6::instance();
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t w = 0; w < (1u << 20); ++w) {
        const std::uint64_t g = scatter(w);
        const int a = nl2_vars6(f1 ^ g);
        if (a >= best) continue;
        const int b = nl2_vars6(f2 ^ g);
        if (a + b < best) {
            best = a + b;
            if (best == 0) break;
        }
    }
    return best;
}

}  // namespace covrad::kernel
