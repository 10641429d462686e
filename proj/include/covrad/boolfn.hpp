#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covrad/field.hpp"

namespace covrad {

inline constexpr int kMaxVars = 7;

/// Packed bit vector of length 2^n <= 128. Bit i is the value at point i
/// (truth table) or the coefficient of monomial i (ANF); point and monomial
/// indices use bit j-1 for variable x_j.
using Bits = unsigned __int128;

inline constexpr Bits bits_mask(int n) {
    return n >= 7 ? ~Bits{0} : ((Bits{1} << (1u << n)) - 1);
}

inline int popcount(Bits v) {
    return __builtin_popcountll(static_cast<std::uint64_t>(v)) +
           __builtin_popcountll(static_cast<std::uint64_t>(v >> 64));
}

/// GF(2) Moebius transform (ANF <-> truth table; an involution). Throws
/// std::invalid_argument when v has bits at or above index 2^n.
Bits mobius(Bits v, int n);

/// Same transform on a single 64-bit word (n <= 6), unchecked.
std::uint64_t mobius64(std::uint64_t v, int n);

class BooleanFunction {
public:
    BooleanFunction() = default;

    static BooleanFunction from_truth_table(int n, Bits tt);
    static BooleanFunction from_anf(int n, Bits anf);
    static BooleanFunction zero(int n) { return from_anf(n, 0); }
    static BooleanFunction one(int n) { return from_anf(n, 1); }
    /// Product of the variables in mask (bit j-1 for x_j).
    static BooleanFunction monomial(int n, unsigned mask);

    int vars() const { return n_; }
    Bits truth_table() const { return tt_; }
    Bits anf() const { return anf_; }
    std::uint64_t anf_low() const { return static_cast<std::uint64_t>(anf_); }
    bool value(unsigned point) const { return (tt_ >> point) & 1u; }
    bool coefficient(unsigned mask) const { return (anf_ >> mask) & 1u; }
    bool is_zero() const { return anf_ == 0; }

    BooleanFunction operator+(const BooleanFunction& other) const;
    BooleanFunction& operator+=(const BooleanFunction& other) { return *this = *this + other; }
    bool operator==(const BooleanFunction&) const = default;

private:
    BooleanFunction(int n, Bits tt, Bits anf) : n_(n), tt_(tt), anf_(anf) {}

    int n_ = 0;
    Bits tt_ = 0;
    Bits anf_ = 0;
};

int weight(const BooleanFunction& f);
/// Throws std::invalid_argument on dimension mismatch.
int distance(const BooleanFunction& f, const BooleanFunction& g);
/// Largest monomial degree in the ANF; 0 for the zero function.
int degree(const BooleanFunction& f);

/// f1 || f2 = (x_{n+1} + 1) f1 + x_{n+1} f2.
BooleanFunction concat(const BooleanFunction& f1, const BooleanFunction& f2);
/// Inverse of concat: the x_n = 0 and x_n = 1 halves.
std::pair<BooleanFunction, BooleanFunction> split(const BooleanFunction& f);

/// (f o L)(x) = f(Ax + b). L must be over GF(2) with matching dimension.
BooleanFunction apply_affine(const BooleanFunction& f, const AffineMap& l);
BooleanFunction apply_affine(const BooleanFunction& f, const Gf2Affine& l);

/// Sum of the degree-exactly-r monomials of f.
BooleanFunction homogeneous_part(const BooleanFunction& f, int r);
/// Sum of the monomials of degree >= r.
BooleanFunction part_from_degree(const BooleanFunction& f, int r);

/// Degree-r monomials of n variables, ascending by mask. The position of a
/// monomial in this list is its bit in a homogeneous coefficient word.
class MonomialSet {
public:
    MonomialSet(int n, int r);

    int vars() const { return n_; }
    int degree() const { return r_; }
    int size() const { return static_cast<int>(members_.size()); }
    const std::vector<std::uint8_t>& members() const { return members_; }
    std::uint8_t operator[](int i) const { return members_[i]; }
    /// -1 when mask is not a member.
    int index_of(unsigned mask) const;

    /// ANF of the homogeneous function with coefficient word w.
    Bits scatter(std::uint64_t word) const;
    /// Coefficient word of the degree-r part of an ANF.
    std::uint64_t gather(Bits anf) const;

    BooleanFunction function(std::uint64_t word) const { return BooleanFunction::from_anf(n_, scatter(word)); }
    std::uint64_t word(const BooleanFunction& f) const { return gather(f.anf()); }

private:
    int n_, r_;
    std::vector<std::uint8_t> members_;
};

/// 2^n/4 hex digits (at least one), most significant nibble first, i.e.
/// the first digit holds the highest point indices.
std::string to_hex(const BooleanFunction& f);
BooleanFunction parse_hex(int n, std::string_view text);

/// "x1x2x3+x4x5x6"; "0" and "1" for constants. Terms sorted by degree, then
/// by mask.
std::string to_anf_string(const BooleanFunction& f);
/// When n is omitted the largest variable index is used (at least 1).
BooleanFunction parse_anf(std::string_view text, std::optional<int> n = std::nullopt);

std::uint64_t binomial(int n, int k);

}  // namespace covrad
