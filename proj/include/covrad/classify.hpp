#pragma once

#include <array>
#include <string>
#include <vector>

#include "covrad/boolfn.hpp"

namespace covrad {

inline constexpr int kClassCount = 11;

/// Representative fn_index of the AGL(6)-classes of RM(6,6)/RM(3,6).
BooleanFunction fn_rep(int index);
std::string fn_rep_anf(int index);

struct ClassProperties {
    int degree = 0;
    int nl2 = 0;
    int nl3 = 0;
    int ml2 = 0;
};

/// (deg, nl_2, nl_3, ml_2) of every representative, computed from scratch.
std::array<ClassProperties, kClassCount> compute_class_properties(int workers = 1);

/// Class index of f + RM(3,6), found by matching (degree of the degree >= 4
/// part, nl_3) against the representatives. The lookup is built once; it
/// throws std::logic_error if two representatives share a pair or f's pair
/// is not in the table.
int classify_coset(const BooleanFunction& f);

struct TypeLabel {
    int i = 0, j = 0;
    TypeLabel() = default;
    TypeLabel(int a, int b) : i(a < b ? a : b), j(a < b ? b : a) {}
    bool operator==(const TypeLabel&) const = default;
    auto operator<=>(const TypeLabel&) const = default;
    std::string to_string() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
};

/// Type of a 7-variable function from the classes of its two halves.
TypeLabel type_of(const BooleanFunction& f);

struct ExclusionEntry {
    TypeLabel type;
    /// min{nl3_i + ml2_j, nl3_j + ml2_i}
    int bound = 0;
    bool diagonal = false;
    /// nl_3 = 21 ruled out: bound <= 20, or parity when i == j.
    bool excluded = false;
};

/// All 66 types in (i, j) order.
std::vector<ExclusionEntry> exclusion_table(const std::array<ClassProperties, kClassCount>& props);
std::string exclusion_csv(const std::vector<ExclusionEntry>& table);

/// max_k nl3_k + ml2_k over the given representative indices (all by default).
int rho_upper_bound(const std::array<ClassProperties, kClassCount>& props, const std::vector<int>& indices = {});

struct ChainBound {
    int r = 0, n = 0;
    int value = 0;
    std::string derivation;
};

/// Literature inputs used by chain_bounds; not computed here.
struct CitedRadii {
    int rho_2_7 = 40;
    int rho_2_8 = 96;   // upper bound
    int rho_2_9 = 216;  // upper bound
    int rho_4_7 = 8;
};

/// rho(r,n) <= rho(r-1,n-1) + rho(r,n-1) for (3,8),(3,9),(3,10),(4,8),(4,9),(4,10),
/// starting from rho(3,7) = rho37.
std::vector<ChainBound> chain_bounds(int rho37 = 20, const CitedRadii& cited = {});

}  // namespace covrad
