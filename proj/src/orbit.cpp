#include "covrad/orbit.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>

#include "covrad/classify.hpp"
#include "covrad/io.hpp"

namespace covrad {

namespace {

struct KeySlots {
    std::array<std::uint8_t, kCosetKeyBits> mask_of{};
    KeySlots() {
        int next = 0;
        for (int d = 4; d <= 6; ++d)
            for (unsigned mask = 0; mask < 64; ++mask)
                if (__builtin_popcount(mask) == d) mask_of[next++] = static_cast<std::uint8_t>(mask);
    }
};

const KeySlots& slots() {
    static const KeySlots s;
    return s;
}

CosetKey key_of_anf(std::uint64_t anf) {
    const auto& s = slots();
    CosetKey key = 0;
    for (int i = 0; i < kCosetKeyBits; ++i)
        if ((anf >> s.mask_of[i]) & 1u) key |= 1u << i;
    return key;
}

}  // namespace

CosetKey coset_key(const BooleanFunction& f) {
    if (f.vars() != 6) throw std::invalid_argument("coset keys are defined for 6-variable functions");
    return key_of_anf(f.anf_low());
}

std::uint64_t coset_anf(CosetKey key) {
    if (key >= kCosetCount) throw std::invalid_argument("coset key has more than 22 bits");
    const auto& s = slots();
    std::uint64_t anf = 0;
    for (int i = 0; i < kCosetKeyBits; ++i)
        if ((key >> i) & 1u) anf |= std::uint64_t{1} << s.mask_of[i];
    return anf;
}

BooleanFunction coset_lift(CosetKey key) { return BooleanFunction::from_anf(6, coset_anf(key)); }

CosetKey coset_act(CosetKey key, const Gf2Affine& l) {
    if (l.dim() != 6) throw std::invalid_argument("coset action needs a 6-dimensional map");
    const std::uint64_t tt = mobius64(coset_anf(key), 6);
    std::uint8_t image[64];
    image[0] = l.shift();
    for (unsigned x = 1; x < 64; ++x) image[x] = image[x & (x - 1)] ^ l.column(__builtin_ctz(x));
    std::uint64_t out = 0;
    for (unsigned x = 0; x < 64; ++x) out |= ((tt >> image[x]) & 1u) << x;
    return key_of_anf(mobius64(out, 6));
}

CosetKey coset_act(CosetKey key, const AffineMap& l) { return coset_act(key, Gf2Affine::from_map(l)); }

MatrixSet::MatrixSet(std::vector<std::uint64_t> packed) : packed_(std::move(packed)) {
    std::sort(packed_.begin(), packed_.end());
    packed_.erase(std::unique(packed_.begin(), packed_.end()), packed_.end());
    for (auto p : packed_) Gf2Affine::from_packed_matrix(6, p);  // throws when singular
}

bool MatrixSet::contains(std::uint64_t packed) const {
    return std::binary_search(packed_.begin(), packed_.end(), packed);
}

std::uint64_t MatrixSet::content_hash() const { return fnv1a(serialize_matrix_set(*this)); }

std::vector<std::uint8_t> serialize_matrix_set(const MatrixSet& set) {
    ByteWriter w;
    w.text("AMS1");
    w.u64(set.size());
    for (auto p : set.packed()) w.u64(p);
    return std::move(w.buffer());
}

MatrixSet deserialize_matrix_set(std::span<const std::uint8_t> bytes, std::optional<std::uint64_t> expected_hash) {
    ByteReader rd(bytes);
    if (rd.remaining() < 12 || rd.text(4) != "AMS1") throw std::runtime_error("input hash mismatch: not an AMS1 file");
    const std::uint64_t count = rd.u64();
    if (rd.remaining() != count * 8)
        throw std::runtime_error("input hash mismatch: AMS1 declares " + std::to_string(count) + " matrices but holds " +
                                 std::to_string(rd.remaining()) + " payload bytes");
    if (expected_hash && fnv1a(bytes) != *expected_hash)
        throw std::runtime_error("input hash mismatch: AMS1 content hash " + hash_hex(fnv1a(bytes)) + ", expected " +
                                 hash_hex(*expected_hash));
    std::vector<std::uint64_t> packed(count);
    for (auto& p : packed) p = rd.u64();
    if (!std::is_sorted(packed.begin(), packed.end()) ||
        std::adjacent_find(packed.begin(), packed.end()) != packed.end())
        throw std::runtime_error("input hash mismatch: AMS1 matrices are not strictly ascending");
    return MatrixSet(std::move(packed));
}

void save_matrix_set(const MatrixSet& set, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_matrix_set(set));
}

MatrixSet load_matrix_set(const std::filesystem::path& path, std::optional<std::uint64_t> expected_hash) {
    return deserialize_matrix_set(read_file(path), expected_hash);
}

std::vector<int> OrbitResult::reaching_word(std::size_t i) const {
    std::vector<int> word;
    for (auto at = static_cast<std::int64_t>(i); at >= 0; at = transcript[at].parent)
        word.push_back(transcript[at].generator);
    std::reverse(word.begin(), word.end());
    return word;
}

OrbitResult bfs_orbit(CosetKey start, std::span<const Gf2Affine> gens, const OrbitOptions& options) {
    if (start >= kCosetCount) throw std::invalid_argument("start key has more than 22 bits");
    if (gens.empty()) throw std::invalid_argument("bfs_orbit needs at least one generator");
    for (const auto& g : gens)
        if (g.dim() != 6) throw std::invalid_argument("generators must act on GF(2)^6");

    std::vector<std::uint64_t> visited(kCosetCount / 64, 0);
    struct Item {
        CosetKey key;
        Gf2Affine map;
        std::int32_t index;  // position in the transcript, -1 for the seed
    };
    std::deque<Item> queue;
    queue.push_back({start, Gf2Affine::identity(6), -1});
    std::vector<std::uint64_t> matrices;
    OrbitResult res;
    while (!queue.empty()) {
        const Item item = queue.front();
        queue.pop_front();
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            const CosetKey next = coset_act(item.key, gens[gi]);
            std::uint64_t& word = visited[next >> 6];
            const std::uint64_t bit = std::uint64_t{1} << (next & 63);
            if (word & bit) continue;
            word |= bit;
            ++res.size;
            const Gf2Affine map = compose(item.map, gens[gi]);
            std::int32_t index = -1;
            if (options.transcript) {
                index = static_cast<std::int32_t>(res.transcript.size());
                res.transcript.push_back({next, item.index, static_cast<std::uint8_t>(gi)});
            }
            queue.push_back({next, map, index});
            if (options.collect_matrices) matrices.push_back(map.pack_matrix());
        }
    }
    if (options.collect_matrices) res.matrices = MatrixSet(std::move(matrices));
    return res;
}

std::vector<Gf2Affine> agl6_generators() {
    const auto [a, b] = agl_generators(6, FiniteField::get(2));
    return {Gf2Affine::from_map(a), Gf2Affine::from_map(b)};
}

std::vector<std::size_t> all_orbit_lengths() {
    const auto gens = agl6_generators();
    std::vector<std::size_t> lengths;
    for (int i = 0; i <= 10; ++i)
        lengths.push_back(bfs_orbit(coset_key(fn_rep(i)), gens, {.collect_matrices = false}).size);
    return lengths;
}

}  // namespace covrad
