#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covrad/boolfn.hpp"
#include "covrad/field.hpp"

namespace covrad {

/// Coset of RM(3,6) in RM(6,6), identified by its degree >= 4 ANF
/// coefficients: bits 0-14 the degree-4 monomials, 15-20 degree 5, bit 21
/// the degree-6 monomial, each block ascending by mask.
using CosetKey = std::uint32_t;
inline constexpr int kCosetKeyBits = 22;
inline constexpr std::uint32_t kCosetCount = 1u << kCosetKeyBits;

/// f must have 6 variables.
CosetKey coset_key(const BooleanFunction& f);
/// ANF of the minimal representative (no monomials of degree <= 3).
std::uint64_t coset_anf(CosetKey key);
BooleanFunction coset_lift(CosetKey key);
/// Key of f o L + RM(3,6) for any f in the coset.
CosetKey coset_act(CosetKey key, const Gf2Affine& l);
CosetKey coset_act(CosetKey key, const AffineMap& l);

/// Sorted set of 6x6 GF(2) matrices, stored by Gf2Affine::pack_matrix.
class MatrixSet {
public:
    MatrixSet() = default;
    /// Sorts and deduplicates; every key must be an invertible matrix.
    explicit MatrixSet(std::vector<std::uint64_t> packed);

    std::size_t size() const { return packed_.size(); }
    const std::vector<std::uint64_t>& packed() const { return packed_; }
    bool contains(std::uint64_t packed) const;
    Gf2Affine matrix(std::size_t i) const { return Gf2Affine::from_packed_matrix(6, packed_[i]); }
    std::uint64_t content_hash() const;

private:
    std::vector<std::uint64_t> packed_;
};

/// AMS1: "AMS1", u64 LE count, then count u64 LE packed matrices ascending.
std::vector<std::uint8_t> serialize_matrix_set(const MatrixSet& set);
/// Throws std::runtime_error("input hash mismatch ...") when the payload does
/// not match the declared count or, if given, the expected content hash.
MatrixSet deserialize_matrix_set(std::span<const std::uint8_t> bytes,
                                 std::optional<std::uint64_t> expected_hash = std::nullopt);
void save_matrix_set(const MatrixSet& set, const std::filesystem::path& path);
MatrixSet load_matrix_set(const std::filesystem::path& path,
                          std::optional<std::uint64_t> expected_hash = std::nullopt);

struct OrbitOptions {
    bool collect_matrices = true;
    /// Keep, per reached coset, its BFS parent and generator index.
    bool transcript = false;
};

struct OrbitResult {
    std::size_t size = 0;
    MatrixSet matrices;
    /// Reached cosets in discovery order, with parent index (or -1) and generator.
    struct Step {
        CosetKey key;
        std::int32_t parent;
        std::uint8_t generator;
    };
    std::vector<Step> transcript;

    /// Generator indices leading from the start to transcript entry i.
    std::vector<int> reaching_word(std::size_t i) const;
};

/// Breadth-first walk over the orbit of `start`. The queue starts with
/// (start, I) and an empty visited set; for each popped (c, L) and each
/// generator G in order, an unvisited c o G is marked, queued with L o G,
/// and the matrix part of L o G is recorded.
OrbitResult bfs_orbit(CosetKey start, std::span<const Gf2Affine> gens, const OrbitOptions& options = {});

/// The two-element AGL(6, 2) generating pair as GF(2) maps.
std::vector<Gf2Affine> agl6_generators();

/// Orbit length of every fn_i coset, in index order.
std::vector<std::size_t> all_orbit_lengths();

}  // namespace covrad
