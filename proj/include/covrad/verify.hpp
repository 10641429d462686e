#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covrad/boolfn.hpp"
#include "covrad/classify.hpp"
#include "covrad/nonlin.hpp"
#include "covrad/orbit.hpp"

namespace covrad {

struct Counterexample {
    std::uint64_t matrix = 0;  ///< packed 6x6 matrix, 0 when not applicable
    std::uint32_t t = 0;
    std::uint32_t g = 0;
    std::string detail;
};

struct Verdict {
    std::string stage;
    bool pass = false;
    std::optional<Counterexample> counterexample;
    /// Named counters in insertion order.
    std::vector<std::pair<std::string, std::uint64_t>> counters;
    /// Input name and content hash.
    std::vector<std::pair<std::string, std::string>> inputs;

    std::uint64_t counter(const std::string& name) const;
    void set(const std::string& name, std::uint64_t value);
};

/// Type (2,9), Case 1: no g in F_9(15) has F_2(8) inside (F_9(13) u F_9(15)) + g.
Verdict check_29(const NlTable& t2, const NlTable& t9);

/// Type (3,10), Case 1, two rounds over g in F_3(12) u F_3(14).
Verdict check_310(const NlTable& t3, const NlTable& t10);

struct Reduction {
    BooleanFunction reduced;
    TypeLabel type;
    int k = 0;                 ///< variable index 1..6 used in x7 -> x7 + x_k
    unsigned monomial = 0;     ///< degree-4 monomial of h4 the choice came from
};

/// Applies x7 -> x7 + x_k to f = f1 || f2 where f1 + f2 has the degree-6
/// monomial and a nonzero degree-4 part, choosing k so that (f1 + f2) x_k
/// keeps the degree-6 monomial and has a degree-5 monomial. Throws
/// std::invalid_argument when the shape does not hold.
Reduction reduce_to_610(const BooleanFunction& f);

/// T_3 words of { s o A^{-1} : s in F_6(6) } in the order of F_6(6).
std::vector<std::uint32_t> sweep_subset(const std::vector<std::uint32_t>& f6_words, const Gf2Affine& a);

struct SweepOptions {
    int workers = 1;
    int shards = 1000;
    /// Restrict to these shard indices (empty: all).
    std::vector<int> only_shards;
    /// Directory for the checkpoint file; empty disables checkpointing.
    std::filesystem::path checkpoint_dir;
    /// Called after each completed batch with (shards done, shards total).
    std::function<void(int, int)> progress;
    /// Stop after this many newly completed shards (testing resume); 0 = no limit.
    int stop_after = 0;
};

/// Every 100th shard of 1000: the fixed 1% subset.
std::vector<int> proxy_shards(int shards = 1000);

/// For each A in aset and each t in F_10(15), with S the sweep subset of A
/// and g = s_0 + t, fails if S + g lies inside F_10(15).
Verdict sweep_610(const MatrixSet& aset, const NlTable& t6, const NlTable& t10, const SweepOptions& options = {});

/// nl_3 of the 7-variable lower-bound witness.
BooleanFunction witness_function();
Verdict check_witness();

struct ProveOptions {
    int workers = 1;
    bool full_sweep = true;
    std::filesystem::path checkpoint_dir;
    bool include_witness = true;
};

struct ProofReport {
    std::vector<Verdict> stages;
    bool upper_bound_proved = false;  ///< rho(3,7) <= 20
    bool lower_bound_proved = false;  ///< rho(3,7) >= 20
    std::string conclusion;
    std::vector<TypeLabel> deep_checked;

    std::string to_text() const;
    std::string to_json() const;
};

/// Builds every input from scratch and chains all stages.
ProofReport prove_rho37(const ProveOptions& options);

std::string verdict_text(const Verdict& v);
std::string verdict_json(const Verdict& v);

}  // namespace covrad
