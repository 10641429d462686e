#include "covrad/nonlin.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "covrad/io.hpp"
#include "covrad/nl_kernel.hpp"
#include "covrad/parallel.hpp"

namespace covrad {

namespace {

// ANF bit of each degree-r monomial of n variables, ascending by mask.
struct MonomialBits {
    std::vector<Bits> by_nr[kMaxVars + 1][kMaxVars + 1];
    MonomialBits() {
        for (int n = 1; n <= kMaxVars; ++n)
            for (int r = 0; r <= n; ++r)
                for (unsigned mask = 0; mask < (1u << n); ++mask)
                    if (__builtin_popcount(mask) == r) by_nr[n][r].push_back(Bits{1} << mask);
    }
};

const std::vector<Bits>& monomial_bits(int n, int r) {
    static const MonomialBits table;
    return table.by_nr[n][r];
}

int nl0_tt(Bits tt, int n) {
    const int w = popcount(tt);
    return std::min(w, (1 << n) - w);
}

int nl1_tt(Bits tt, int n) {
    int spec[128];
    const int size = 1 << n;
    for (int x = 0; x < size; ++x) spec[x] = ((tt >> x) & 1u) ? -1 : 1;
    for (int len = 1; len < size; len <<= 1)
        for (int i = 0; i < size; i += len << 1)
            for (int j = i; j < i + len; ++j) {
                const int a = spec[j], b = spec[j + len];
                spec[j] = a + b;
                spec[j + len] = a - b;
            }
    int peak = 0;
    for (int x = 0; x < size; ++x) peak = std::max(peak, std::abs(spec[x]));
    return (size - peak) / 2;
}

int nl_rec(Bits anf, int n, int r, NlEngine engine) {
    if (r >= n) return 0;
    if (r == 0) return nl0_tt(mobius(anf, n), n);
    const bool fast = engine == NlEngine::fast;
    if (r == 1) {
        if (fast && n == 5) return kernel::Nl1Table5::instance().nl1(static_cast<std::uint32_t>(anf));
        return nl1_tt(mobius(anf, n), n);
    }
    if (fast && n == 6 && r == 2) return kernel::nl2_vars6(static_cast<std::uint64_t>(anf));
    if (fast && n == 7 && r == 3)
        return kernel::nl3_vars7(static_cast<std::uint64_t>(anf), static_cast<std::uint64_t>(anf >> 64));

    const unsigned half = 1u << (n - 1);
    const Bits low = anf & bits_mask(n - 1);
    const Bits f1 = low;
    const Bits f2 = low ^ (anf >> half);
    const auto& mono = monomial_bits(n - 1, r);
    const std::uint64_t words = std::uint64_t{1} << mono.size();
    int best = std::numeric_limits<int>::max();
    Bits g = 0;
    for (std::uint64_t i = 0; i < words; ++i) {
        if (i) g ^= mono[__builtin_ctzll(i)];
        const int a = nl_rec(f1 ^ g, n - 1, r - 1, engine);
        if (a >= best) continue;
        const int b = nl_rec(f2 ^ g, n - 1, r - 1, engine);
        if (a + b < best) {
            best = a + b;
            if (best == 0) break;
        }
    }
    return best;
}

template <class Word>
int bruteforce_min(Word tt, const std::vector<Word>& rows, int n) {
    const int size = 1 << n;
    int best = std::numeric_limits<int>::max();
    Word c = 0;
    const std::uint64_t words = std::uint64_t{1} << rows.size();
    for (std::uint64_t i = 0; i < words; ++i) {
        if (i) c ^= rows[__builtin_ctzll(i)];
        int w;
        if constexpr (sizeof(Word) == 8) w = __builtin_popcountll(tt ^ c);
        else w = popcount(tt ^ c);
        // The all-ones word is in the code, so c and its complement share one step.
        best = std::min(best, std::min(w, size - w));
    }
    return best;
}

}  // namespace

int nl0(const BooleanFunction& f) { return nl0_tt(f.truth_table(), f.vars()); }

int nl1(const BooleanFunction& f) { return nl1_tt(f.truth_table(), f.vars()); }

std::vector<int> walsh_spectrum(const BooleanFunction& f) {
    const int size = 1 << f.vars();
    std::vector<int> spec(size);
    for (int x = 0; x < size; ++x) spec[x] = f.value(x) ? -1 : 1;
    for (int len = 1; len < size; len <<= 1)
        for (int i = 0; i < size; i += len << 1)
            for (int j = i; j < i + len; ++j) {
                const int a = spec[j], b = spec[j + len];
                spec[j] = a + b;
                spec[j + len] = a - b;
            }
    return spec;
}

int nl_r_bruteforce(const BooleanFunction& f, int r) {
    const int n = f.vars();
    if (r < 0) throw std::invalid_argument("order must be non-negative");
    if (r >= n) return 0;
    std::uint64_t dim = 0;
    for (int d = 0; d <= r; ++d) dim += binomial(n, d);
    if (dim > kBruteforceMaxDim)
        throw std::length_error("RM(" + std::to_string(r) + "," + std::to_string(n) + ") has 2^" +
                                std::to_string(dim) + " codewords; brute force is capped at 2^" +
                                std::to_string(kBruteforceMaxDim));
    std::vector<Bits> rows;
    for (int d = 1; d <= r; ++d)
        for (Bits m : monomial_bits(n, d)) rows.push_back(mobius(m, n));
    if (n <= 6) {
        std::vector<std::uint64_t> narrow(rows.begin(), rows.end());
        return bruteforce_min(static_cast<std::uint64_t>(f.truth_table()), narrow, n);
    }
    return bruteforce_min(f.truth_table(), rows, n);
}

int nl_r_recursive(const BooleanFunction& f, int r, NlEngine engine) {
    if (r < 0 || r > f.vars()) throw std::invalid_argument("order out of range for nl_r");
    return nl_rec(f.anf(), f.vars(), r, engine);
}

int ml_r(const BooleanFunction& f, int r, int workers) {
    const int n = f.vars();
    if (r < 1 || r > n - 1) throw std::invalid_argument("ml_r needs 1 <= r <= n-1");
    if (binomial(n, r + 1) > 20) throw std::length_error("ml_r enumeration too large (more than 2^20 shifts)");
    return build_nl_table(f, r + 1, workers).max_value();
}

std::size_t IndexSet::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
}

IndexSet& IndexSet::operator|=(const IndexSet& other) {
    if (other.size_ != size_) throw std::invalid_argument("IndexSet size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

std::vector<std::uint32_t> IndexSet::members() const {
    std::vector<std::uint32_t> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi)
        for (std::uint64_t w = words_[wi]; w; w &= w - 1)
            out.push_back(static_cast<std::uint32_t>(wi * 64 + __builtin_ctzll(w)));
    return out;
}

NlTable::NlTable(BooleanFunction base, int r, std::vector<std::uint8_t> values)
    : base_(base), r_(r), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << binomial(base_.vars(), r)))
        throw std::invalid_argument("NlTable size does not match 2^C(n,r)");
    for (auto v : values_) {
        if (v > kMaxValue) throw std::invalid_argument("NlTable value out of range");
        ++counts_[v];
    }
}

int NlTable::min_value() const {
    for (int k = 0; k <= kMaxValue; ++k)
        if (counts_[k]) return k;
    return 0;
}

int NlTable::max_value() const {
    for (int k = kMaxValue; k >= 0; --k)
        if (counts_[k]) return k;
    return 0;
}

std::vector<int> NlTable::attained() const {
    std::vector<int> ks;
    for (int k = 0; k <= kMaxValue; ++k)
        if (counts_[k]) ks.push_back(k);
    return ks;
}

LevelSet NlTable::level_set(int k) const {
    LevelSet s{k, IndexSet(values_.size())};
    for (std::uint32_t g = 0; g < values_.size(); ++g)
        if (values_[g] == k) s.members.insert(g);
    return s;
}

IndexSet NlTable::at_least(int threshold) const {
    IndexSet s(values_.size());
    for (std::uint32_t g = 0; g < values_.size(); ++g)
        if (values_[g] >= threshold) s.insert(g);
    return s;
}

std::uint64_t NlTable::content_hash() const { return fnv1a(serialize_nl_table(*this)); }

NlTable build_nl_table(const BooleanFunction& base, int r, int workers, NlEngine engine) {
    const int n = base.vars();
    if (r < 1 || r > n) throw std::invalid_argument("table order out of range");
    const std::uint64_t m = binomial(n, r);
    if (m > 24) throw std::length_error("NlTable would exceed 2^24 entries");
    std::vector<std::uint8_t> values(std::size_t{1} << m);
    const Bits anf = base.anf();

    if (engine == NlEngine::fast && n == 6 && r == 3) {
        const auto& scatter = kernel::CubicScatter6::instance();
        const auto lo = static_cast<std::uint64_t>(anf);
        kernel::Nl1Table5::instance();
        parallel_for(values.size(), workers, [&](std::size_t begin, std::size_t end) {
            for (std::size_t g = begin; g < end; ++g)
                values[g] = static_cast<std::uint8_t>(kernel::nl2_vars6(lo ^ scatter(static_cast<std::uint32_t>(g))));
        });
    } else {
        if (engine == NlEngine::fast && n == 5) kernel::Nl1Table5::instance();
        const MonomialSet h(n, r);
        parallel_for(values.size(), workers, [&](std::size_t begin, std::size_t end) {
            for (std::size_t g = begin; g < end; ++g)
                values[g] = static_cast<std::uint8_t>(nl_rec(anf ^ h.scatter(g), n, r - 1, engine));
        });
    }
    return NlTable(base, r, std::move(values));
}

std::vector<std::uint8_t> serialize_nl_table(const NlTable& table) {
    ByteWriter w;
    w.text("NLT1");
    w.u8(static_cast<std::uint8_t>(table.vars()));
    w.u8(static_cast<std::uint8_t>(table.order()));
    const std::string hex = to_hex(table.base());
    w.u16(static_cast<std::uint16_t>(hex.size()));
    w.text(hex);
    w.u8(static_cast<std::uint8_t>(kMonomialOrderTag.size()));
    w.text(kMonomialOrderTag);
    w.bytes(table.values());
    return std::move(w.buffer());
}

NlTable deserialize_nl_table(std::span<const std::uint8_t> bytes) {
    ByteReader rd(bytes);
    if (rd.remaining() < 4 || rd.text(4) != "NLT1") throw std::runtime_error("not an NLT1 table");
    const int n = rd.u8();
    const int r = rd.u8();
    if (n < 1 || n > kMaxVars || r < 1 || r > n) throw std::runtime_error("NLT1 header has bad (n, r)");
    const std::string hex = rd.text(rd.u16());
    const std::string tag = rd.text(rd.u8());
    if (tag != kMonomialOrderTag) throw std::runtime_error("NLT1 monomial ordering '" + tag + "' is not supported");
    const std::size_t expected = std::size_t{1} << binomial(n, r);
    if (rd.remaining() != expected) throw std::runtime_error("input hash mismatch: NLT1 payload has wrong length");
    auto payload = rd.bytes(expected);
    return NlTable(parse_hex(n, hex), r, {payload.begin(), payload.end()});
}

void save_nl_table(const NlTable& table, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_nl_table(table));
}

NlTable load_nl_table(const std::filesystem::path& path) { return deserialize_nl_table(read_file(path)); }

CoveringResult check_covering_condition(const NlTable& t1, const NlTable& t2, int t) {
    if (t1.vars() != t2.vars() || t1.order() != t2.order())
        throw std::invalid_argument("covering condition needs tables of the same (n, r)");
    // g is allowed iff t2[g] >= t - t1[g], i.e. g lies in the suffix union for h = t1[g].
    CoveringResult res;
    for (std::uint32_t g = 0; g < t1.size(); ++g) {
        const int h = t1[g];
        if (t2[g] + h >= t) continue;
        if (res.holds || h < res.h) {
            res.holds = false;
            res.h = h;
            res.g = g;
        }
    }
    return res;
}

ParityResult parity_check(const BooleanFunction& f, int r) {
    const int n = f.vars();
    if (r < 1 || r > n - 2) throw std::invalid_argument("parity check needs 1 <= r <= n-2");
    ParityResult res;
    res.nl = nl_r_recursive(f, r);
    const auto [f1, f2] = split(f);
    res.nl_first = nl_r_recursive(f1, r);
    res.nl_second = nl_r_recursive(f2, r);
    res.consistent = (res.nl % 2 == 0) || ((res.nl_first + res.nl_second) % 2 == 1);
    return res;
}

}  // namespace covrad
