#include "covrad/classify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "covrad/nonlin.hpp"

namespace covrad {

namespace {

constexpr const char* kReps[kClassCount] = {
    "0",
    "x1x2x3x4",
    "x1x2x4x5+x1x2x3x6",
    "x2x3x4x5+x1x3x4x6+x1x2x5x6",
    "x1x2x3x4x5",
    "x1x2x3x4x5+x1x2x3x6",
    "x1x2x3x4x5+x1x3x4x6+x1x2x5x6",
    "x1x2x3x4x5x6",
    "x1x2x3x4x5x6+x1x2x3x4",
    "x1x2x3x4x5x6+x1x2x4x5+x1x2x3x6",
    "x1x2x3x4x5x6+x2x3x4x5+x1x3x4x6+x1x2x5x6",
};

int top_degree(const BooleanFunction& f) { return degree(part_from_degree(f, 4)); }

class ClassLookup {
public:
    ClassLookup() {
        for (int i = 0; i < kClassCount; ++i) {
            const auto f = fn_rep(i);
            const auto key = std::make_pair(top_degree(f), nl_r_recursive(f, 3));
            if (!by_pair_.emplace(key, i).second)
                throw std::logic_error("representatives fn_" + std::to_string(by_pair_[key]) + " and fn_" +
                                       std::to_string(i) + " share (degree, nl3)");
        }
    }
    int find(int deg, int nl3) const {
        const auto it = by_pair_.find({deg, nl3});
        if (it == by_pair_.end())
            throw std::logic_error("no class with degree " + std::to_string(deg) + " and nl3 " + std::to_string(nl3));
        return it->second;
    }

private:
    std::map<std::pair<int, int>, int> by_pair_;
};

}  // namespace

std::string fn_rep_anf(int index) {
    if (index < 0 || index >= kClassCount) throw std::out_of_range("class index must be in 0..10");
    return kReps[index];
}

BooleanFunction fn_rep(int index) { return parse_anf(fn_rep_anf(index), 6); }

std::array<ClassProperties, kClassCount> compute_class_properties(int workers) {
    std::array<ClassProperties, kClassCount> out;
    for (int i = 0; i < kClassCount; ++i) {
        const auto f = fn_rep(i);
        out[i] = {degree(f), nl_r_recursive(f, 2), nl_r_recursive(f, 3), ml_r(f, 2, workers)};
    }
    return out;
}

int classify_coset(const BooleanFunction& f) {
    if (f.vars() != 6) throw std::invalid_argument("classify_coset needs a 6-variable function");
    static const ClassLookup lookup;
    return lookup.find(top_degree(f), nl_r_recursive(f, 3));
}

TypeLabel type_of(const BooleanFunction& f) {
    if (f.vars() != 7) throw std::invalid_argument("type_of needs a 7-variable function");
    const auto [f1, f2] = split(f);
    return TypeLabel(classify_coset(f1), classify_coset(f2));
}

std::vector<ExclusionEntry> exclusion_table(const std::array<ClassProperties, kClassCount>& props) {
    std::vector<ExclusionEntry> out;
    for (int i = 0; i < kClassCount; ++i)
        for (int j = i; j < kClassCount; ++j) {
            ExclusionEntry e;
            e.type = TypeLabel(i, j);
            e.bound = std::min(props[i].nl3 + props[j].ml2, props[j].nl3 + props[i].ml2);
            e.diagonal = i == j;
            // Equal halves have equal nl3 parity, so an odd total is impossible.
            e.excluded = e.diagonal || e.bound <= 20;
            out.push_back(e);
        }
    return out;
}

std::string exclusion_csv(const std::vector<ExclusionEntry>& table) {
    std::string out = "i,j,bound,excluded,rule\n";
    for (const auto& e : table)
        out += std::to_string(e.type.i) + "," + std::to_string(e.type.j) + "," + std::to_string(e.bound) + "," +
               (e.excluded ? "yes" : "no") + "," + (e.diagonal ? "parity" : e.excluded ? "bound" : "deep-check") +
               "\n";
    return out;
}

int rho_upper_bound(const std::array<ClassProperties, kClassCount>& props, const std::vector<int>& indices) {
    int best = 0;
    for (int k = 0; k < kClassCount; ++k) {
        if (!indices.empty() && std::find(indices.begin(), indices.end(), k) == indices.end()) continue;
        best = std::max(best, props[k].nl3 + props[k].ml2);
    }
    return best;
}

std::vector<ChainBound> chain_bounds(int rho37, const CitedRadii& cited) {
    std::vector<ChainBound> out;
    const auto add = [&](int r, int n, int a, const char* a_name, int b, const char* b_name) {
        out.push_back({r, n, a + b,
                       std::string(a_name) + " + " + b_name + " = " + std::to_string(a) + " + " + std::to_string(b)});
        return a + b;
    };
    const int r38 = add(3, 8, cited.rho_2_7, "rho(2,7)", rho37, "rho(3,7)");
    const int r39 = add(3, 9, cited.rho_2_8, "rho(2,8)", r38, "rho(3,8)");
    add(3, 10, cited.rho_2_9, "rho(2,9)", r39, "rho(3,9)");
    const int r48 = add(4, 8, rho37, "rho(3,7)", cited.rho_4_7, "rho(4,7)");
    const int r49 = add(4, 9, r38, "rho(3,8)", r48, "rho(4,8)");
    add(4, 10, r39, "rho(3,9)", r49, "rho(4,9)");
    return out;
}

}  // namespace covrad
