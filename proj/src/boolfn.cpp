#include "covrad/boolfn.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace covrad {

namespace {

constexpr std::uint64_t kHalfMasks[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
    0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull,
};

void check_vars(int n) {
    if (n < 1 || n > kMaxVars) throw std::invalid_argument("variable count must be in 1..7");
}

}  // namespace

std::uint64_t mobius64(std::uint64_t v, int n) {
    for (int i = 0; i < n && i < 6; ++i) v ^= (v & kHalfMasks[i]) << (1u << i);
    return v;
}

Bits mobius(Bits v, int n) {
    check_vars(n);
    if (v & ~bits_mask(n)) throw std::invalid_argument("bit vector longer than 2^n");
    std::uint64_t lo = static_cast<std::uint64_t>(v);
    std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
    lo = mobius64(lo, std::min(n, 6));
    hi = mobius64(hi, std::min(n, 6));
    if (n == 7) hi ^= lo;
    return (Bits{hi} << 64) | lo;
}

BooleanFunction BooleanFunction::from_truth_table(int n, Bits tt) {
    return BooleanFunction(n, tt, mobius(tt, n));
}

BooleanFunction BooleanFunction::from_anf(int n, Bits anf) {
    return BooleanFunction(n, mobius(anf, n), anf);
}

BooleanFunction BooleanFunction::monomial(int n, unsigned mask) {
    check_vars(n);
    if (mask >= (1u << n)) throw std::invalid_argument("monomial uses a variable beyond x_n");
    return from_anf(n, Bits{1} << mask);
}

BooleanFunction BooleanFunction::operator+(const BooleanFunction& other) const {
    if (n_ != other.n_) throw std::invalid_argument("sum of functions with different variable counts");
    return BooleanFunction(n_, tt_ ^ other.tt_, anf_ ^ other.anf_);
}

int weight(const BooleanFunction& f) { return popcount(f.truth_table()); }

int distance(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.vars() != g.vars()) throw std::invalid_argument("distance: dimension mismatch");
    return popcount(f.truth_table() ^ g.truth_table());
}

int degree(const BooleanFunction& f) {
    int best = 0;
    Bits anf = f.anf();
    for (unsigned mask = 0; anf; ++mask, anf >>= 1)
        if (anf & 1u) best = std::max(best, __builtin_popcount(mask));
    return best;
}

BooleanFunction concat(const BooleanFunction& f1, const BooleanFunction& f2) {
    if (f1.vars() != f2.vars()) throw std::invalid_argument("concat: dimension mismatch");
    const int n = f1.vars();
    if (n >= kMaxVars) throw std::invalid_argument("concat would exceed 7 variables");
    const unsigned half = 1u << n;
    return BooleanFunction::from_truth_table(n + 1, f1.truth_table() | (f2.truth_table() << half));
}

std::pair<BooleanFunction, BooleanFunction> split(const BooleanFunction& f) {
    const int n = f.vars();
    if (n < 2) throw std::invalid_argument("split needs at least 2 variables");
    const unsigned half = 1u << (n - 1);
    const Bits low_mask = bits_mask(n - 1);
    return {BooleanFunction::from_truth_table(n - 1, f.truth_table() & low_mask),
            BooleanFunction::from_truth_table(n - 1, (f.truth_table() >> half) & low_mask)};
}

BooleanFunction apply_affine(const BooleanFunction& f, const Gf2Affine& l) {
    const int n = f.vars();
    if (l.dim() != n) throw std::invalid_argument("apply_affine: dimension mismatch");
    const Bits tt = f.truth_table();
    Bits out = 0;
    const unsigned size = 1u << n;
    std::uint8_t image[128];
    image[0] = l.shift();
    for (unsigned x = 1; x < size; ++x) {
        const int j = __builtin_ctz(x);
        image[x] = image[x ^ (1u << j)] ^ l.column(j);
    }
    for (unsigned x = 0; x < size; ++x)
        if ((tt >> image[x]) & 1u) out |= Bits{1} << x;
    return BooleanFunction::from_truth_table(n, out);
}

BooleanFunction apply_affine(const BooleanFunction& f, const AffineMap& l) {
    return apply_affine(f, Gf2Affine::from_map(l));
}

BooleanFunction homogeneous_part(const BooleanFunction& f, int r) {
    Bits anf = 0;
    const unsigned size = 1u << f.vars();
    for (unsigned mask = 0; mask < size; ++mask)
        if (__builtin_popcount(mask) == r && f.coefficient(mask)) anf |= Bits{1} << mask;
    return BooleanFunction::from_anf(f.vars(), anf);
}

BooleanFunction part_from_degree(const BooleanFunction& f, int r) {
    Bits anf = 0;
    const unsigned size = 1u << f.vars();
    for (unsigned mask = 0; mask < size; ++mask)
        if (__builtin_popcount(mask) >= r && f.coefficient(mask)) anf |= Bits{1} << mask;
    return BooleanFunction::from_anf(f.vars(), anf);
}

MonomialSet::MonomialSet(int n, int r) : n_(n), r_(r) {
    check_vars(n);
    if (r < 0 || r > n) throw std::invalid_argument("monomial degree out of range");
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (__builtin_popcount(mask) == r) members_.push_back(static_cast<std::uint8_t>(mask));
}

int MonomialSet::index_of(unsigned mask) const {
    const auto it = std::lower_bound(members_.begin(), members_.end(), mask);
    if (it == members_.end() || *it != mask) return -1;
    return static_cast<int>(it - members_.begin());
}

Bits MonomialSet::scatter(std::uint64_t word) const {
    Bits anf = 0;
    for (int i = 0; word; ++i, word >>= 1)
        if (word & 1u) anf |= Bits{1} << members_[i];
    return anf;
}

std::uint64_t MonomialSet::gather(Bits anf) const {
    std::uint64_t word = 0;
    for (int i = 0; i < size(); ++i)
        if ((anf >> members_[i]) & 1u) word |= std::uint64_t{1} << i;
    return word;
}

std::string to_hex(const BooleanFunction& f) {
    const int n = f.vars();
    const int digits = n <= 2 ? 1 : (1 << n) / 4;
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(digits, '0');
    const Bits tt = f.truth_table();
    for (int d = 0; d < digits; ++d) {
        const unsigned nibble = static_cast<unsigned>((tt >> (4 * d)) & 0xFu);
        out[digits - 1 - d] = kHex[nibble];
    }
    return out;
}

BooleanFunction parse_hex(int n, std::string_view text) {
    check_vars(n);
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    const int digits = n <= 2 ? 1 : (1 << n) / 4;
    if (static_cast<int>(text.size()) != digits)
        throw std::invalid_argument("hex truth table needs " + std::to_string(digits) + " digits for n=" +
                                    std::to_string(n));
    Bits tt = 0;
    for (char c : text) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
        tt = (tt << 4) | static_cast<unsigned>(v);
    }
    if (tt & ~bits_mask(n)) throw std::invalid_argument("hex truth table has bits beyond 2^n");
    return BooleanFunction::from_truth_table(n, tt);
}

std::string to_anf_string(const BooleanFunction& f) {
    std::vector<unsigned> terms;
    for (unsigned mask = 0; mask < (1u << f.vars()); ++mask)
        if (f.coefficient(mask)) terms.push_back(mask);
    if (terms.empty()) return "0";
    std::stable_sort(terms.begin(), terms.end(), [](unsigned a, unsigned b) {
        return __builtin_popcount(a) < __builtin_popcount(b);
    });
    std::string out;
    for (unsigned mask : terms) {
        if (!out.empty()) out += '+';
        if (mask == 0) {
            out += '1';
            continue;
        }
        for (int j = 0; j < f.vars(); ++j)
            if ((mask >> j) & 1u) out += "x" + std::to_string(j + 1);
    }
    return out;
}

BooleanFunction parse_anf(std::string_view text, std::optional<int> n) {
    std::vector<unsigned> terms;
    int max_var = 0;
    std::string_view rest = text;
    while (true) {
        const auto plus = rest.find('+');
        std::string_view term = rest.substr(0, plus);
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.front()))) term.remove_prefix(1);
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back()))) term.remove_suffix(1);
        if (term.empty()) throw std::invalid_argument("empty ANF term in '" + std::string(text) + "'");
        if (term == "0") {
            // contributes nothing
        } else if (term == "1") {
            terms.push_back(0);
        } else {
            unsigned mask = 0;
            std::size_t i = 0;
            while (i < term.size()) {
                if (term[i] != 'x') throw std::invalid_argument("bad ANF term '" + std::string(term) + "'");
                std::size_t j = i + 1;
                int var = 0;
                while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) {
                    var = var * 10 + (term[j] - '0');
                    ++j;
                }
                if (j == i + 1 || var < 1 || var > kMaxVars)
                    throw std::invalid_argument("bad variable in ANF term '" + std::string(term) + "'");
                mask |= 1u << (var - 1);
                max_var = std::max(max_var, var);
                i = j;
            }
            terms.push_back(mask);
        }
        if (plus == std::string_view::npos) break;
        rest = rest.substr(plus + 1);
    }
    const int vars = n.value_or(std::max(max_var, 1));
    check_vars(vars);
    if (max_var > vars) throw std::invalid_argument("ANF uses a variable beyond x_n");
    Bits anf = 0;
    for (unsigned mask : terms) anf ^= Bits{1} << mask;
    return BooleanFunction::from_anf(vars, anf);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace covrad
