#include "hadex/zverify.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace hadex {

BitMatrix4 SignedMatrix::pattern() const {
    std::uint16_t bits = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (entries[r][c] != 0) bits |= std::uint16_t(1u << (4 * r + c));
    return BitMatrix4(bits);
}

int rank_z(std::array<std::array<std::int64_t, 4>, 4> a) {
    // Bareiss: every intermediate entry is a minor of the input, so it stays exact.
    std::int64_t prev = 1;
    int rank = 0;
    for (int col = 0; col < 4 && rank < 4; ++col) {
        int pivot = -1;
        for (int i = rank; i < 4; ++i) {
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int i = rank + 1; i < 4; ++i) {
            for (int j = col + 1; j < 4; ++j)
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

int rank_z(const SignedMatrix& s) {
    std::array<std::array<std::int64_t, 4>, 4> a{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a[r][c] = s.entries[r][c];
    return rank_z(a);
}

SignedCandidates::SignedCandidates(BitMatrix4 m) : pattern_(m) {
    for (std::uint8_t b = 0; b < 16; ++b)
        if ((m.bits() >> b) & 1) positions_.push_back(b);
}

SignedMatrix SignedCandidates::operator[](std::uint64_t index) const {
    SignedMatrix s;
    for (std::size_t j = 0; j < positions_.size(); ++j) {
        const int b = positions_[j];
        s.entries[b / 4][b % 4] = ((index >> j) & 1) ? -1 : 1;
    }
    return s;
}

SignedCandidates signed_candidates(BitMatrix4 m) { return SignedCandidates(m); }

namespace {

// Row/column negations act on sign assignments. Choosing a spanning forest of
// the bipartite row-column support graph, every orbit has exactly one member
// with +1 on all forest edges, and the orbit has 2^(forest edges) members.
struct OrbitSplit {
    std::vector<std::uint8_t> fixed;  // forest edges, pinned to +1
    std::vector<std::uint8_t> free;
};

OrbitSplit split_by_spanning_forest(BitMatrix4 m) {
    std::array<int, 8> parent{};
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    OrbitSplit split;
    for (std::uint8_t b = 0; b < 16; ++b) {
        if (!((m.bits() >> b) & 1)) continue;
        const int row = find(b / 4), col = find(4 + b % 4);
        if (row != col) {
            parent[row] = col;
            split.fixed.push_back(b);
        } else {
            split.free.push_back(b);
        }
    }
    return split;
}

}  // namespace

ZVerdict verify_counterexample_z(BitMatrix4 m, ZMode mode) {
    const auto start = std::chrono::steady_clock::now();
    ZVerdict v;
    v.matrix = m;
    v.ones = count_ones(m);
    v.mode = mode;

    if (mode == ZMode::Full) {
        const SignedCandidates candidates(m);
        for (const SignedMatrix& s : candidates) {
            v.min_rank_found = std::min(v.min_rank_found, rank_z(s));
            ++v.representatives;
        }
        v.orbit_size = 1;
    } else {
        const OrbitSplit split = split_by_spanning_forest(m);
        SignedMatrix base;
        for (auto b : split.fixed) base.entries[b / 4][b % 4] = 1;
        const std::uint64_t reps = std::uint64_t{1} << split.free.size();
        for (std::uint64_t i = 0; i < reps; ++i) {
            SignedMatrix s = base;
            for (std::size_t j = 0; j < split.free.size(); ++j) {
                const int b = split.free[j];
                s.entries[b / 4][b % 4] = ((i >> j) & 1) ? -1 : 1;
            }
            v.min_rank_found = std::min(v.min_rank_found, rank_z(s));
        }
        v.representatives = reps;
        v.orbit_size = std::uint64_t{1} << split.fixed.size();
    }
    if (v.ones == 0) v.min_rank_found = 0;
    v.assignments_checked = v.representatives * v.orbit_size;
    v.verified = v.min_rank_found >= 3;
    v.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return v;
}

std::vector<ZVerdict> verify_all_z(std::span<const BitMatrix4> matrices, ZMode mode, int jobs) {
    std::vector<ZVerdict> out(matrices.size());
    const auto n = static_cast<std::ptrdiff_t>(matrices.size());
#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = verify_counterexample_z(matrices[static_cast<std::size_t>(i)], mode);
    return out;
}

}  // namespace hadex
