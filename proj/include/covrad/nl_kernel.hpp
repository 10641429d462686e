#pragma once

#include <cstdint>
#include <vector>

namespace covrad::kernel {

/// First-order nonlinearity of every 5-variable function, indexed by the
/// function's ANF coefficients of degree >= 2 (nl1 is unchanged by affine
/// terms, so 2^26 entries cover all 2^32 functions).
///
/// Key layout: bits 0-9 hold the degree-2 monomials, 10-19 degree 3,
/// 20-24 degree 4, bit 25 the degree-5 monomial, each block ascending by
/// monomial mask. Adding a homogeneous quadratic therefore XORs the low 10
/// bits only, and one 1 KiB block of the table holds a whole RM(2,5) coset.
class Nl1Table5 {
public:
    static constexpr int kKeyBits = 26;
    static constexpr std::uint32_t kBlock = 1024;

    /// Built on first use (about a second); shared and immutable afterwards.
    static const Nl1Table5& instance();

    static std::uint32_t key(std::uint32_t anf5);

    int nl1(std::uint32_t anf5) const { return values_[key(anf5)]; }
    const std::uint8_t* data() const { return values_.data(); }

    /// min over g in H_5^(2) u {0} of nl1(f1 + g) + nl1(f2 + g), i.e. the
    /// second-order nonlinearity of the 6-variable function f1 || f2.
    int min_pair_sum(std::uint32_t anf1, std::uint32_t anf2) const;
    /// Portable reference for min_pair_sum.
    int min_pair_sum_scalar(std::uint32_t anf1, std::uint32_t anf2) const;

private:
    Nl1Table5();
    std::vector<std::uint8_t> values_;
};

/// Second-order nonlinearity of a 6-variable function given by its ANF.
inline int nl2_vars6(std::uint64_t anf6) {
    const auto lo = static_cast<std::uint32_t>(anf6);
    const auto hi = static_cast<std::uint32_t>(anf6 >> 32);
    return Nl1Table5::instance().min_pair_sum(lo, lo ^ hi);
}

/// Third-order nonlinearity of a 7-variable function (ANF halves by x7),
/// enumerating all 2^20 cubic shifts with the 6-variable kernel. Stops early
/// once the running minimum reaches zero.
int nl3_vars7(std::uint64_t anf_lo, std::uint64_t anf_hi);

/// Scatter tables for H_6^(3): ANF (64-bit) of the cubic with coefficient
/// word w (20 bits) is lo[w & 1023] | hi[w >> 10].
struct CubicScatter6 {
    std::uint64_t lo[1024];
    std::uint64_t hi[1024];
    std::uint64_t operator()(std::uint32_t word) const { return lo[word & 1023u] | hi[word >> 10]; }
    static const CubicScatter6& instance();
};

}  // namespace covrad::kernel
