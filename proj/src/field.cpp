#include "covrad/field.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace covrad {

namespace {

struct FieldParams {
    int p;
    int k;
    std::vector<int> modulus;  // constant term first, monic, length k+1
};

FieldParams params_for(int q) {
    switch (q) {
    case 2: return {2, 1, {}};
    case 3: return {3, 1, {}};
    case 5: return {5, 1, {}};
    case 7: return {7, 1, {}};
    case 11: return {11, 1, {}};
    case 13: return {13, 1, {}};
    case 4: return {2, 2, {1, 1, 1}};
    case 8: return {2, 3, {1, 1, 0, 1}};
    case 9: return {3, 2, {2, 2, 1}};
    case 16: return {2, 4, {1, 1, 0, 0, 1}};
    default: throw std::invalid_argument("unsupported field size q=" + std::to_string(q));
    }
}

std::vector<int> digits(int value, int p, int k) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) {
        d[i] = value % p;
        value /= p;
    }
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int v = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p + d[i];
    return v;
}

}  // namespace

const FiniteField& FiniteField::get(int q) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<FiniteField>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<FiniteField>(new FiniteField(q))).first;
    return *it->second;
}

std::vector<int> FiniteField::supported_sizes() { return {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}; }

FiniteField::FiniteField(int q) {
    const FieldParams params = params_for(q);
    p_ = params.p;
    k_ = params.k;
    q_ = q;
    modulus_ = params.modulus;

    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    for (int a = 0; a < q; ++a) {
        const auto da = digits(a, p_, k_);
        std::vector<int> dn(k_);
        for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
        neg_[a] = static_cast<FieldElem>(undigits(dn, p_));
        for (int b = 0; b < q; ++b) {
            const auto db = digits(b, p_, k_);
            std::vector<int> ds(k_);
            for (int i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
            add_[a * q + b] = static_cast<FieldElem>(undigits(ds, p_));

            // Schoolbook product, then reduce by the monic modulus.
            std::vector<int> prod(2 * k_ - 1, 0);
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            if (k_ > 1) {
                for (int deg = 2 * k_ - 2; deg >= k_; --deg) {
                    const int c = prod[deg];
                    if (c == 0) continue;
                    for (int i = 0; i <= k_; ++i) {
                        const int idx = deg - k_ + i;
                        prod[idx] = ((prod[idx] - c * modulus_[i]) % p_ + p_) % p_;
                    }
                }
            }
            prod.resize(k_);
            mul_[a * q + b] = static_cast<FieldElem>(undigits(prod, p_));
        }
    }

    // Generator: x for extensions, the smallest primitive root for prime fields.
    FieldElem generator = 0;
    const auto order_of = [&](FieldElem a) {
        int ord = 1;
        FieldElem x = a;
        while (x != 1) {
            x = mul(x, a);
            ++ord;
            if (ord > q_) return 0;
        }
        return ord;
    };
    if (q_ == 2) {
        generator = 1;
    } else if (k_ > 1) {
        generator = static_cast<FieldElem>(p_);
    } else {
        for (int g = 2; g < q_; ++g)
            if (order_of(static_cast<FieldElem>(g)) == q_ - 1) {
                generator = static_cast<FieldElem>(g);
                break;
            }
    }
    if (order_of(generator) != q_ - 1)
        throw std::logic_error("field generator is not primitive for q=" + std::to_string(q_));

    exp_.resize(q_ - 1);
    log_.assign(q_, -1);
    FieldElem x = 1;
    for (int i = 0; i < q_ - 1; ++i) {
        exp_[i] = x;
        log_[x] = i;
        x = mul(x, generator);
    }
    build_quadratic_extension();
}

FieldElem FiniteField::inv(FieldElem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FieldElem FiniteField::pow(FieldElem a, long long e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const long long m = q_ - 1;
    return exp_[static_cast<int>((((log_[a] * (e % m)) % m) + m) % m)];
}

int FiniteField::log(FieldElem a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
}

int FiniteField::order(FieldElem a) const {
    if (a == 0) throw std::domain_error("order of zero");
    int ord = 1;
    for (FieldElem x = a; x != 1; x = mul(x, a)) ++ord;
    return ord;
}

void FiniteField::build_quadratic_extension() {
    // GF(q^2) = GF(q)[t]/(t^2 - c1 t - c0) for the first polynomial with no root.
    bool found = false;
    for (int c0 = 1; c0 < q_ && !found; ++c0) {
        for (int c1 = 0; c1 < q_ && !found; ++c1) {
            bool has_root = false;
            for (int x = 0; x < q_; ++x) {
                const FieldElem xx = mul(static_cast<FieldElem>(x), static_cast<FieldElem>(x));
                const FieldElem rhs = add(mul(static_cast<FieldElem>(c1), static_cast<FieldElem>(x)),
                                          static_cast<FieldElem>(c0));
                if (xx == rhs) {
                    has_root = true;
                    break;
                }
            }
            if (!has_root) {
                ext_poly_ = {static_cast<FieldElem>(c0), static_cast<FieldElem>(c1)};
                found = true;
            }
        }
    }
    if (!found) throw std::logic_error("no irreducible quadratic found");

    using Ext = std::pair<FieldElem, FieldElem>;  // u + v t
    const auto ext_mul = [&](Ext x, Ext y) {
        const FieldElem vv = mul(x.second, y.second);
        const FieldElem u = add(mul(x.first, y.first), mul(vv, ext_poly_[0]));
        const FieldElem v = add(add(mul(x.first, y.second), mul(x.second, y.first)), mul(vv, ext_poly_[1]));
        return Ext{u, v};
    };
    const int ext_order = q_ * q_ - 1;
    for (int idx = 1; idx < q_ * q_; ++idx) {
        const Ext beta{static_cast<FieldElem>(idx % q_), static_cast<FieldElem>(idx / q_)};
        Ext x = beta;
        int ord = 1;
        while (!(x.first == 1 && x.second == 0)) {
            x = ext_mul(x, beta);
            ++ord;
        }
        if (ord != ext_order) continue;
        Ext bq{1, 0};
        for (int i = 0; i < q_; ++i) bq = ext_mul(bq, beta);
        const Ext trace{add(beta.first, bq.first), add(beta.second, bq.second)};
        if (trace.second != 0) throw std::logic_error("trace of beta left GF(q)");
        trace_beta_ = trace.first;
        return;
    }
    throw std::logic_error("no primitive element in quadratic extension");
}

FieldElem FiniteField::quadratic_trace_of_generator() const { return trace_beta_; }

std::string FiniteField::quadratic_extension_string() const {
    std::ostringstream os;
    os << "GF(" << q_ << ")[t]/(t^2 - " << to_string(ext_poly_[1]) << "*t - " << to_string(ext_poly_[0])
       << ")";
    return os.str();
}

std::string FiniteField::modulus_string() const {
    if (k_ == 1) return "prime field";
    std::ostringstream os;
    bool first = true;
    for (int i = k_; i >= 0; --i) {
        const int c = modulus_[i];
        if (c == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c;
        os << 'x';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

std::string FiniteField::to_string(FieldElem a) const {
    if (k_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    return "a^" + std::to_string(log_[a]);
}

FieldElem FiniteField::parse(const std::string& text) const {
    if (text.rfind("a^", 0) == 0) {
        const int e = std::stoi(text.substr(2));
        return exp(e);
    }
    const long long v = std::stoll(text);
    if (k_ > 1) {
        if (v == 0) return 0;
        if (v == 1) return 1;
        throw std::invalid_argument("extension-field entries must be 0, 1 or a^i: " + text);
    }
    return static_cast<FieldElem>(((v % p_) + p_) % p_);
}

// ---------------------------------------------------------------------------

namespace {

// Rank-based invertibility check by Gauss-Jordan elimination.
bool invert_matrix(const FiniteField& f, int n, std::vector<FieldElem> m, std::vector<FieldElem>* out) {
    std::vector<FieldElem> inv = identity_matrix(f, n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r * n + col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return false;
        if (pivot != col)
            for (int c = 0; c < n; ++c) {
                std::swap(m[pivot * n + c], m[col * n + c]);
                std::swap(inv[pivot * n + c], inv[col * n + c]);
            }
        const FieldElem s = f.inv(m[col * n + col]);
        for (int c = 0; c < n; ++c) {
            m[col * n + c] = f.mul(m[col * n + c], s);
            inv[col * n + c] = f.mul(inv[col * n + c], s);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r * n + col] == 0) continue;
            const FieldElem factor = m[r * n + col];
            for (int c = 0; c < n; ++c) {
                m[r * n + c] = f.sub(m[r * n + c], f.mul(factor, m[col * n + c]));
                inv[r * n + c] = f.sub(inv[r * n + c], f.mul(factor, inv[col * n + c]));
            }
        }
    }
    if (out) *out = std::move(inv);
    return true;
}

std::vector<FieldElem> mat_mul(const FiniteField& f, int n, const std::vector<FieldElem>& a,
                               const std::vector<FieldElem>& b) {
    std::vector<FieldElem> c(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const FieldElem aik = a[i * n + k];
            if (aik == 0) continue;
            for (int j = 0; j < n; ++j) c[i * n + j] = f.add(c[i * n + j], f.mul(aik, b[k * n + j]));
        }
    return c;
}

std::vector<FieldElem> mat_vec(const FiniteField& f, int n, const std::vector<FieldElem>& a,
                               std::span<const FieldElem> x) {
    std::vector<FieldElem> y(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) y[i] = f.add(y[i], f.mul(a[i * n + j], x[j]));
    return y;
}

}  // namespace

std::vector<FieldElem> identity_matrix(const FiniteField& field, int n) {
    (void)field;
    std::vector<FieldElem> m(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    return m;
}

AffineMap::AffineMap(const FiniteField& field, int n, std::vector<FieldElem> matrix,
                     std::vector<FieldElem> shift)
    : field_(&field), n_(n), a_(std::move(matrix)), b_(std::move(shift)) {
    if (n_ < 1) throw std::invalid_argument("affine map dimension must be positive");
    if (static_cast<int>(a_.size()) != n_ * n_ || static_cast<int>(b_.size()) != n_)
        throw std::invalid_argument("affine map shape mismatch");
    for (FieldElem e : a_)
        if (e >= field.q()) throw std::invalid_argument("matrix entry outside field");
    for (FieldElem e : b_)
        if (e >= field.q()) throw std::invalid_argument("vector entry outside field");
    if (!invert_matrix(field, n_, a_, nullptr)) throw std::invalid_argument("singular matrix");
}

AffineMap::AffineMap(Trusted, const FiniteField& field, int n, std::vector<FieldElem> matrix,
                     std::vector<FieldElem> shift)
    : field_(&field), n_(n), a_(std::move(matrix)), b_(std::move(shift)) {}

AffineMap AffineMap::identity(const FiniteField& field, int n) {
    return AffineMap(Trusted{}, field, n, identity_matrix(field, n), std::vector<FieldElem>(n, 0));
}

AffineMap AffineMap::linear(const FiniteField& field, int n, std::vector<FieldElem> matrix) {
    return AffineMap(field, n, std::move(matrix), std::vector<FieldElem>(n, 0));
}

AffineMap AffineMap::translation(const FiniteField& field, std::vector<FieldElem> shift) {
    const int n = static_cast<int>(shift.size());
    return AffineMap(field, n, identity_matrix(field, n), std::move(shift));
}

std::vector<FieldElem> AffineMap::apply(std::span<const FieldElem> x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("point dimension mismatch");
    auto y = mat_vec(*field_, n_, a_, x);
    for (int i = 0; i < n_; ++i) y[i] = field_->add(y[i], b_[i]);
    return y;
}

bool AffineMap::is_identity() const {
    for (int i = 0; i < n_; ++i) {
        if (b_[i] != 0) return false;
        for (int j = 0; j < n_; ++j)
            if (a_[i * n_ + j] != (i == j ? 1 : 0)) return false;
    }
    return true;
}

std::uint64_t AffineMap::key() const {
    const int digits_needed = n_ * n_ + n_;
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 64;
    unsigned __int128 range = 1;
    for (int i = 0; i < digits_needed; ++i) {
        range *= static_cast<unsigned>(field_->q());
        if (range > limit) throw std::length_error("affine map too large to pack into 64 bits");
    }
    std::uint64_t k = 0;
    for (FieldElem e : a_) k = k * field_->q() + e;
    for (FieldElem e : b_) k = k * field_->q() + e;
    return k;
}

bool AffineMap::operator==(const AffineMap& other) const {
    return field_->q() == other.field_->q() && n_ == other.n_ && a_ == other.a_ && b_ == other.b_;
}

AffineMap compose(const AffineMap& l1, const AffineMap& l2) {
    if (l1.n_ != l2.n_ || l1.field_->q() != l2.field_->q())
        throw std::invalid_argument("compose: dimension or field mismatch");
    const FiniteField& f = *l1.field_;
    auto a = mat_mul(f, l1.n_, l1.a_, l2.a_);
    auto b = mat_vec(f, l1.n_, l1.a_, l2.b_);
    for (int i = 0; i < l1.n_; ++i) b[i] = f.add(b[i], l1.b_[i]);
    return AffineMap(AffineMap::Trusted{}, f, l1.n_, std::move(a), std::move(b));
}

AffineMap inverse(const AffineMap& l) {
    const FiniteField& f = *l.field_;
    std::vector<FieldElem> inv;
    if (!invert_matrix(f, l.n_, l.a_, &inv)) throw std::logic_error("stored matrix is singular");
    auto b = mat_vec(f, l.n_, inv, l.b_);
    for (auto& e : b) e = f.neg(e);
    return AffineMap(AffineMap::Trusted{}, f, l.n_, std::move(inv), std::move(b));
}

AffineMap power(const AffineMap& l, long long e) {
    AffineMap base = e < 0 ? inverse(l) : l;
    if (e < 0) e = -e;
    AffineMap result = AffineMap::identity(l.field(), l.dim());
    while (e > 0) {
        if (e & 1) result = compose(result, base);
        base = compose(base, base);
        e >>= 1;
    }
    return result;
}

namespace {

void set_unit(std::vector<FieldElem>& m, int n, int i, int j, FieldElem value) {
    m[(i - 1) * n + (j - 1)] = value;
}

}  // namespace

std::pair<AffineMap, AffineMap> gl_generators(int n, const FiniteField& field) {
    if (n < 2) throw std::invalid_argument("generator pair needs n >= 2");
    const int q = field.q();
    if (n == 2 && q == 2) {
        return {AffineMap::linear(field, 2, {0, 1, 1, 1}), AffineMap::linear(field, 2, {1, 1, 0, 1})};
    }
    if (n == 2) {
        const FieldElem alpha = field.alpha();
        const FieldElem trace = field.quadratic_trace_of_generator();
        return {AffineMap::linear(field, 2, {0, field.neg(alpha), 1, trace}),
                AffineMap::linear(field, 2, {alpha, 0, 0, 1})};
    }
    // A = I + E_{n1} + (alpha - 1) E_{22};  B = E_{12} + E_{23} + ... + E_{n1}
    auto a = identity_matrix(field, n);
    set_unit(a, n, n, 1, 1);
    set_unit(a, n, 2, 2, field.alpha());
    std::vector<FieldElem> b(n * n, 0);
    for (int i = 1; i < n; ++i) set_unit(b, n, i, i + 1, 1);
    set_unit(b, n, n, 1, 1);
    return {AffineMap::linear(field, n, std::move(a)), AffineMap::linear(field, n, std::move(b))};
}

std::pair<AffineMap, AffineMap> agl_generators(int n, const FiniteField& field) {
    if (n < 2) throw std::invalid_argument("generator pair needs n >= 2");
    const int q = field.q();
    if (n == 2 && q == 2) {
        return {AffineMap(field, 2, {0, 1, 1, 1}, {0, 0}), AffineMap(field, 2, {1, 1, 0, 1}, {1, 0})};
    }
    auto [ga, gb] = gl_generators(n, field);
    if (n == 2) {
        // ((0 -alpha; 1 beta+beta^q), 0) and (diag(alpha, 1), e2)
        return {ga, AffineMap(field, 2, gb.matrix(), {0, 1})};
    }
    std::vector<FieldElem> e1(n, 0);
    e1[0] = 1;
    return {AffineMap(field, n, ga.matrix(), std::move(e1)), gb};
}

std::uint64_t gl_order(int n, int q) {
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    std::uint64_t order = 1, qi = 1;
    for (int i = 0; i < n; ++i) {
        order *= qn - qi;
        qi *= q;
    }
    return order;
}

std::uint64_t agl_order(int n, int q) {
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    return qn * gl_order(n, q);
}

std::vector<AffineMap> enumerate_group(std::span<const AffineMap> gens, std::size_t cap) {
    if (gens.empty()) throw std::invalid_argument("no generators");
    const FiniteField& f = gens.front().field();
    const int n = gens.front().dim();
    for (const auto& g : gens)
        if (g.dim() != n || g.field().q() != f.q()) throw std::invalid_argument("generators disagree on (n,q)");

    std::vector<AffineMap> elements;
    std::unordered_set<std::uint64_t> seen;
    elements.push_back(AffineMap::identity(f, n));
    seen.insert(elements.back().key());
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const auto& g : gens) {
            AffineMap next = compose(elements[head], g);
            if (seen.insert(next.key()).second) {
                if (elements.size() >= cap) throw std::length_error("group closure exceeds cap");
                elements.push_back(std::move(next));
            }
        }
    }
    return elements;
}

std::size_t generate_group(std::span<const AffineMap> gens, std::size_t cap) {
    return enumerate_group(gens, cap).size();
}

std::size_t max_element_order(std::span<const AffineMap> gens, std::size_t cap) {
    const auto elements = enumerate_group(gens, cap);
    std::size_t best = 1;
    for (const auto& g : elements) {
        std::size_t ord = 1;
        AffineMap x = g;
        while (!x.is_identity()) {
            x = compose(x, g);
            ++ord;
        }
        best = std::max(best, ord);
    }
    return best;
}

std::string format_matrix(const AffineMap& l) {
    std::ostringstream os;
    for (int i = 0; i < l.dim(); ++i) {
        if (i) os << ';';
        for (int j = 0; j < l.dim(); ++j) {
            if (j) os << ' ';
            os << l.field().to_string(l.a(i, j));
        }
    }
    return os.str();
}

std::string format_vector(const AffineMap& l) {
    std::ostringstream os;
    for (int i = 0; i < l.dim(); ++i) {
        if (i) os << ' ';
        os << l.field().to_string(l.b(i));
    }
    return os.str();
}

std::vector<FieldElem> parse_matrix(const FiniteField& field, int n, const std::string& text) {
    std::vector<FieldElem> out;
    std::stringstream rows(text);
    std::string row;
    int row_count = 0;
    while (std::getline(rows, row, ';')) {
        std::istringstream entries(row);
        std::string entry;
        int cols = 0;
        while (entries >> entry) {
            out.push_back(field.parse(entry));
            ++cols;
        }
        if (cols != n) throw std::invalid_argument("matrix row has wrong length: '" + row + "'");
        ++row_count;
    }
    if (row_count != n) throw std::invalid_argument("matrix has wrong number of rows");
    return out;
}

// ---------------------------------------------------------------------------

namespace {

bool gf2_invertible(int n, const std::array<std::uint8_t, 8>& cols) {
    std::array<std::uint8_t, 8> basis{};  // basis[i] has leading bit i
    int rank = 0;
    for (int j = 0; j < n; ++j) {
        std::uint8_t v = cols[j];
        for (int i = n - 1; i >= 0; --i) {
            if (!((v >> i) & 1u)) continue;
            if (!basis[i]) {
                basis[i] = v;
                ++rank;
                break;
            }
            v ^= basis[i];
        }
    }
    return rank == n;
}

}  // namespace

Gf2Affine Gf2Affine::identity(int n) {
    Gf2Affine l;
    l.n_ = n;
    for (int j = 0; j < n; ++j) l.cols_[j] = static_cast<std::uint8_t>(1u << j);
    return l;
}

Gf2Affine Gf2Affine::from_columns(int n, std::span<const std::uint8_t> columns, std::uint8_t shift) {
    if (n < 1 || n > 8 || static_cast<int>(columns.size()) != n)
        throw std::invalid_argument("GF(2) affine map shape mismatch");
    Gf2Affine l;
    l.n_ = n;
    const unsigned mask = (1u << n) - 1u;
    for (int j = 0; j < n; ++j) {
        if (columns[j] & ~mask) throw std::invalid_argument("column has bits beyond dimension");
        l.cols_[j] = columns[j];
    }
    if (shift & ~mask) throw std::invalid_argument("shift has bits beyond dimension");
    l.shift_ = shift;
    if (!gf2_invertible(n, l.cols_)) throw std::invalid_argument("singular matrix");
    return l;
}

Gf2Affine Gf2Affine::from_map(const AffineMap& map) {
    if (map.field().q() != 2) throw std::invalid_argument("Gf2Affine needs a map over GF(2)");
    const int n = map.dim();
    std::vector<std::uint8_t> cols(n, 0);
    std::uint8_t shift = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (map.a(i, j)) cols[j] |= static_cast<std::uint8_t>(1u << i);
        if (map.b(i)) shift |= static_cast<std::uint8_t>(1u << i);
    }
    return from_columns(n, cols, shift);
}

Gf2Affine Gf2Affine::from_packed_matrix(int n, std::uint64_t packed) {
    std::vector<std::uint8_t> cols(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((packed >> (i * n + j)) & 1u) cols[j] |= static_cast<std::uint8_t>(1u << i);
    return from_columns(n, cols, 0);
}

AffineMap Gf2Affine::to_map() const {
    const FiniteField& f = FiniteField::get(2);
    std::vector<FieldElem> a(n_ * n_, 0), b(n_, 0);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) a[i * n_ + j] = entry(i, j) ? 1 : 0;
        b[i] = (shift_ >> i) & 1u;
    }
    return AffineMap(f, n_, std::move(a), std::move(b));
}

std::uint64_t Gf2Affine::pack_matrix() const {
    std::uint64_t key = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (entry(i, j)) key |= std::uint64_t{1} << (i * n_ + j);
    return key;
}

Gf2Affine Gf2Affine::linear_part() const {
    Gf2Affine l = *this;
    l.shift_ = 0;
    return l;
}

Gf2Affine compose(const Gf2Affine& l1, const Gf2Affine& l2) {
    if (l1.n_ != l2.n_) throw std::invalid_argument("compose: dimension mismatch");
    Gf2Affine out;
    out.n_ = l1.n_;
    const Gf2Affine lin1 = l1.linear_part();
    for (int j = 0; j < l1.n_; ++j) out.cols_[j] = lin1.apply(l2.cols_[j]);
    out.shift_ = l1.apply(l2.shift_);
    return out;
}

Gf2Affine inverse(const Gf2Affine& l) {
    const int n = l.n_;
    // Solve A X = I column by column via elimination on the augmented rows.
    std::array<std::uint16_t, 8> rows{};  // low byte: row of A, high byte: row of I
    for (int i = 0; i < n; ++i) {
        std::uint16_t r = 0;
        for (int j = 0; j < n; ++j)
            if (l.entry(i, j)) r |= static_cast<std::uint16_t>(1u << j);
        r |= static_cast<std::uint16_t>(1u << (8 + i));
        rows[i] = r;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if ((rows[r] >> col) & 1u) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::logic_error("stored GF(2) matrix is singular");
        std::swap(rows[pivot], rows[col]);
        for (int r = 0; r < n; ++r)
            if (r != col && ((rows[r] >> col) & 1u)) rows[r] ^= rows[col];
    }
    Gf2Affine out;
    out.n_ = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((rows[i] >> (8 + j)) & 1u) out.cols_[j] |= static_cast<std::uint8_t>(1u << i);
    out.shift_ = out.linear_part().apply(l.shift_);
    return out;
}

}  // namespace covrad
