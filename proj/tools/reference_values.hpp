#pragma once

// Reference numbers the CLI diffs its recomputed results against.

#include <array>
#include <cstdint>

namespace covrad::reference {

struct Table1Row {
    int deg, nl2, nl3, ml2;
};

inline constexpr std::array<Table1Row, 11> kTable1 = {{
    {0, 0, 0, 0},
    {4, 4, 4, 16},
    {4, 6, 6, 16},
    {4, 10, 8, 14},
    {5, 2, 2, 16},
    {5, 4, 4, 14},
    {5, 8, 6, 14},
    {6, 1, 1, 17},
    {6, 3, 3, 15},
    {6, 7, 5, 15},
    {6, 9, 7, 15},
}};

struct LevelRow {
    int fn;
    int first_k;  // counts at first_k, first_k + 2, ...
    std::array<std::uint64_t, 6> counts;
};

inline constexpr std::array<LevelRow, 3> kTable2 = {{
    {2, 6, {64, 1920, 64320, 579072, 397440, 5760}},
    {3, 6, {0, 2304, 71680, 628992, 345600, 0}},
    {6, 6, {32, 2112, 65312, 638208, 342912, 0}},
}};

inline constexpr std::array<LevelRow, 2> kTable3 = {{
    {9, 5, {6, 298, 12540, 245556, 784416, 5760}},
    {10, 5, {0, 288, 13216, 254016, 746496, 34560}},
}};

inline constexpr std::array<std::uint64_t, 11> kTable5 = {1,      651,     18228, 13888,   2016,  312480,
                                                          1749888, 64,     41664, 1166592, 888832};

inline constexpr std::uint64_t kDistinctMatrices = 130843;
inline constexpr std::uint64_t kCheck29Candidates = 5760;
inline constexpr std::uint64_t kCheck310Candidates = 974592;
inline constexpr std::uint64_t kCheck310Survivors = 6912;
inline constexpr int kWitnessNl3 = 20;
inline constexpr int kRhoUpperBound = 22;
inline constexpr std::array<int, 6> kChainBounds = {60, 156, 372, 28, 88, 244};

}  // namespace covrad::reference
