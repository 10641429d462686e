#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "covrad/boolfn.hpp"

namespace covrad {

int nl0(const BooleanFunction& f);
/// Distance to the nearest affine function, from the Walsh spectrum.
int nl1(const BooleanFunction& f);
std::vector<int> walsh_spectrum(const BooleanFunction& f);

/// Largest RM(r,n) dimension nl_r_bruteforce will enumerate (2^26 codewords).
inline constexpr int kBruteforceMaxDim = 26;

/// Exhaustive minimum distance to RM(r, n). Oracle use only; throws
/// std::length_error when the code has more than 2^kBruteforceMaxDim words.
int nl_r_bruteforce(const BooleanFunction& f, int r);

enum class NlEngine {
    fast,     ///< table-driven kernels where they apply, recursion elsewhere
    generic,  ///< plain recursion bottoming out at the Walsh spectrum
};

/// nl_r by splitting on x_n: min over g in H_{n-1}^(r) u {0} of
/// nl_{r-1}(f1+g) + nl_{r-1}(f2+g). Any r in 0..n is accepted; r = 0 and
/// r = 1 go straight to nl0/nl1 and r = n gives 0.
int nl_r_recursive(const BooleanFunction& f, int r, NlEngine engine = NlEngine::fast);

/// Max of nl_r(f+g) over g in H_n^(r+1) u {0}. Needs 2^C(n,r+1) <= 2^20.
int ml_r(const BooleanFunction& f, int r, int workers = 1);

/// Fixed-size membership bitset over [0, size).
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::size_t size) : size_(size), words_((size + 63) / 64) {}

    std::size_t size() const { return size_; }
    bool contains(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void insert(std::uint32_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    std::size_t count() const;
    IndexSet& operator|=(const IndexSet& other);
    /// Members in ascending order.
    std::vector<std::uint32_t> members() const;
    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct LevelSet {
    int k = 0;
    IndexSet members;
};

/// values[g] = nl_{r-1}(base + g) for every coefficient word g of
/// H_n^(r) u {0} (canonical monomial order).
class NlTable {
public:
    static constexpr int kMaxValue = 64;

    NlTable() = default;
    NlTable(BooleanFunction base, int r, std::vector<std::uint8_t> values);

    const BooleanFunction& base() const { return base_; }
    int vars() const { return base_.vars(); }
    int order() const { return r_; }
    std::size_t size() const { return values_.size(); }
    std::uint8_t operator[](std::uint32_t g) const { return values_[g]; }
    std::span<const std::uint8_t> values() const { return values_; }

    std::uint64_t count(int k) const { return (k < 0 || k > kMaxValue) ? 0 : counts_[k]; }
    int min_value() const;
    int max_value() const;
    /// Values k with count(k) > 0, ascending.
    std::vector<int> attained() const;

    LevelSet level_set(int k) const;
    /// Union of F(k) over every k >= threshold.
    IndexSet at_least(int threshold) const;

    std::uint64_t content_hash() const;

private:
    BooleanFunction base_;
    int r_ = 0;
    std::vector<std::uint8_t> values_;
    std::array<std::uint64_t, kMaxValue + 1> counts_{};
};

/// Needs 2^C(n,r) <= 2^24. The (6,3) case runs on the table kernel.
NlTable build_nl_table(const BooleanFunction& base, int r, int workers = 1,
                       NlEngine engine = NlEngine::fast);

/// NLT1 format: "NLT1", n, r, u16 length + base truth table hex, u8 length +
/// ordering tag, then one byte per entry.
std::vector<std::uint8_t> serialize_nl_table(const NlTable& table);
NlTable deserialize_nl_table(std::span<const std::uint8_t> bytes);
void save_nl_table(const NlTable& table, const std::filesystem::path& path);
NlTable load_nl_table(const std::filesystem::path& path);

inline constexpr std::string_view kMonomialOrderTag = "mask-asc";

struct CoveringResult {
    bool holds = true;
    /// First violation in ascending h: g in F_1(h) outside every F_2(k), k >= t-h.
    int h = -1;
    std::uint32_t g = 0;
};

/// F_1(h) is contained in the union of F_2(k), k >= t-h, for every h.
/// With T_i built from f_i at order r this holds iff nl_r(f1 || f2) >= t.
CoveringResult check_covering_condition(const NlTable& t1, const NlTable& t2, int t);

struct ParityResult {
    bool consistent = true;
    int nl = 0, nl_first = 0, nl_second = 0;
};

/// When nl_r(f) is odd exactly one of nl_r(f1), nl_r(f2) must be odd.
ParityResult parity_check(const BooleanFunction& f, int r);

}  // namespace covrad
