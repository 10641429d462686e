#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace covrad {

/// Element of a small field, stored as the integer whose base-p digits are the
/// polynomial coefficients (constant term least significant).
using FieldElem = std::uint8_t;

/// GF(q) for q = p^k <= 16, with exp/log tables over a fixed generator alpha.
///
/// Extension fields use the Conway polynomials
///   GF(4): x^2+x+1, GF(8): x^3+x+1, GF(9): x^2+2x+2, GF(16): x^4+x+1,
/// for which alpha = x is primitive. The generator is re-verified on
/// construction.
class FiniteField {
public:
    /// Shared instance for a supported q; throws std::invalid_argument otherwise.
    static const FiniteField& get(int q);
    static std::vector<int> supported_sizes();

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    /// Modulus coefficients, constant term first (empty for prime fields).
    const std::vector<int>& modulus() const { return modulus_; }
    std::string modulus_string() const;

    FieldElem add(FieldElem a, FieldElem b) const { return add_[a * q_ + b]; }
    FieldElem sub(FieldElem a, FieldElem b) const { return add_[a * q_ + neg_[b]]; }
    FieldElem neg(FieldElem a) const { return neg_[a]; }
    FieldElem mul(FieldElem a, FieldElem b) const { return mul_[a * q_ + b]; }
    FieldElem inv(FieldElem a) const;
    FieldElem pow(FieldElem a, long long e) const;

    FieldElem alpha() const { return exp(1); }
    FieldElem exp(int i) const { return exp_[((i % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }
    /// Discrete log base alpha; a must be nonzero.
    int log(FieldElem a) const;
    /// Multiplicative order of a nonzero element.
    int order(FieldElem a) const;

    /// beta + beta^q for a primitive element beta of GF(q^2); lies in GF(q).
    FieldElem quadratic_trace_of_generator() const;
    /// Description of the quadratic extension used for the trace above.
    std::string quadratic_extension_string() const;

    /// Text form: residue for prime fields, "a^i" (or 0) for extensions.
    std::string to_string(FieldElem a) const;
    FieldElem parse(const std::string& text) const;

private:
    explicit FiniteField(int q);
    void build_quadratic_extension();

    int p_ = 0, k_ = 0, q_ = 0;
    std::vector<int> modulus_;
    std::vector<FieldElem> add_, mul_, neg_, exp_;
    std::vector<int> log_;
    std::array<FieldElem, 2> ext_poly_{};  // x^2 = c1*x + c0 over GF(q)
    FieldElem trace_beta_ = 0;
};

/// x -> A x + b over GF(q)^n, A invertible. Entries are row-major.
class AffineMap {
public:
    /// Throws std::invalid_argument on shape mismatch or singular A.
    AffineMap(const FiniteField& field, int n, std::vector<FieldElem> matrix,
              std::vector<FieldElem> shift);

    static AffineMap identity(const FiniteField& field, int n);
    static AffineMap linear(const FiniteField& field, int n, std::vector<FieldElem> matrix);
    static AffineMap translation(const FiniteField& field, std::vector<FieldElem> shift);

    const FiniteField& field() const { return *field_; }
    int dim() const { return n_; }
    FieldElem a(int row, int col) const { return a_[row * n_ + col]; }
    FieldElem b(int row) const { return b_[row]; }
    const std::vector<FieldElem>& matrix() const { return a_; }
    const std::vector<FieldElem>& shift() const { return b_; }

    std::vector<FieldElem> apply(std::span<const FieldElem> x) const;
    bool is_identity() const;

    /// Base-q packing of (A row-major, b); unique per group element.
    std::uint64_t key() const;

    bool operator==(const AffineMap& other) const;

private:
    struct Trusted {};
    AffineMap(Trusted, const FiniteField& field, int n, std::vector<FieldElem> matrix,
              std::vector<FieldElem> shift);

    friend AffineMap compose(const AffineMap&, const AffineMap&);
    friend AffineMap inverse(const AffineMap&);

    const FiniteField* field_;
    int n_;
    std::vector<FieldElem> a_, b_;
};

/// (A1,b1) o (A2,b2) = (A1 A2, A1 b2 + b1).
AffineMap compose(const AffineMap& l1, const AffineMap& l2);
AffineMap inverse(const AffineMap& l);
AffineMap power(const AffineMap& l, long long e);

/// E_{ij} helpers are 1-based to match the usual matrix-unit notation.
std::vector<FieldElem> identity_matrix(const FiniteField& field, int n);

/// Two-element generating sets for GL(n,q) and AGL(n,q).
std::pair<AffineMap, AffineMap> gl_generators(int n, const FiniteField& field);
std::pair<AffineMap, AffineMap> agl_generators(int n, const FiniteField& field);

/// prod_{i<n} (q^n - q^i)
std::uint64_t gl_order(int n, int q);
/// q^n * |GL(n,q)|
std::uint64_t agl_order(int n, int q);

/// Closure of gens under composition, by BFS. Throws std::length_error when
/// the closure exceeds cap.
std::vector<AffineMap> enumerate_group(std::span<const AffineMap> gens, std::size_t cap);
std::size_t generate_group(std::span<const AffineMap> gens, std::size_t cap);
/// Largest element order in the generated group (group is cyclic iff this
/// equals the group order).
std::size_t max_element_order(std::span<const AffineMap> gens, std::size_t cap);

/// Rows separated by ';', entries separated by spaces.
std::string format_matrix(const AffineMap& l);
std::string format_vector(const AffineMap& l);
std::vector<FieldElem> parse_matrix(const FiniteField& field, int n, const std::string& text);

/// Affine map over GF(2)^n (n <= 8) with the matrix stored by columns as bit
/// masks; bit i of column j is A_{ij}. Points use bit j-1 for coordinate x_j.
class Gf2Affine {
public:
    Gf2Affine() = default;
    static Gf2Affine identity(int n);
    /// Throws std::invalid_argument when the matrix is singular.
    static Gf2Affine from_columns(int n, std::span<const std::uint8_t> columns, std::uint8_t shift);
    static Gf2Affine from_map(const AffineMap& l);
    /// Inverse of pack_matrix (zero shift).
    static Gf2Affine from_packed_matrix(int n, std::uint64_t packed);

    AffineMap to_map() const;

    int dim() const { return n_; }
    std::uint8_t column(int j) const { return cols_[j]; }
    std::uint8_t shift() const { return shift_; }
    bool entry(int i, int j) const { return (cols_[j] >> i) & 1u; }

    std::uint8_t apply(std::uint8_t x) const {
        std::uint8_t y = shift_;
        for (int j = 0; j < n_; ++j)
            if ((x >> j) & 1u) y ^= cols_[j];
        return y;
    }

    /// Row-major packing of the matrix part only: bit (i*n + j) = A_{ij}.
    std::uint64_t pack_matrix() const;
    Gf2Affine linear_part() const;
    bool operator==(const Gf2Affine&) const = default;

    friend Gf2Affine compose(const Gf2Affine& l1, const Gf2Affine& l2);
    friend Gf2Affine inverse(const Gf2Affine& l);

private:
    int n_ = 0;
    std::array<std::uint8_t, 8> cols_{};
    std::uint8_t shift_ = 0;
};

}  // namespace covrad
