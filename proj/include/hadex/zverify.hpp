#pragma once

// Integer verification of GF(2) counterexamples.
//
// For C = A o B over Z with C binary, every one of C needs A_ij * B_ij = 1,
// i.e. A_ij = B_ij = +-1. With the off-support entries of both factors held
// at zero, A and B coincide, so a single signed matrix stands for both and one
// exact rank computation decides each of the 2^k sign assignments. A matrix
// is verified when no assignment drops the rank to 2 or below.
//
// This is the sign-enumeration procedure only. Factorizations that put a
// nonzero in A where B is zero (or vice versa) are not covered.

#include "hadex/bitmatrix.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

namespace hadex {

struct SignedMatrix {
    std::array<std::array<std::int8_t, 4>, 4> entries{};

    [[nodiscard]] BitMatrix4 pattern() const;
    friend bool operator==(const SignedMatrix&, const SignedMatrix&) = default;
};

/// Exact rank over Q by fraction-free (Bareiss) elimination on 64-bit integers.
[[nodiscard]] int rank_z(const SignedMatrix& s);
[[nodiscard]] int rank_z(std::array<std::array<std::int64_t, 4>, 4> a);

/// The 2^k signed matrices supported on the ones of `m`. Candidate i puts -1
/// on the j-th one (row-major bit order) iff bit j of i is set.
class SignedCandidates {
public:
    explicit SignedCandidates(BitMatrix4 m);

    [[nodiscard]] std::uint64_t size() const { return std::uint64_t{1} << positions_.size(); }
    [[nodiscard]] SignedMatrix operator[](std::uint64_t index) const;
    [[nodiscard]] std::span<const std::uint8_t> positions() const { return positions_; }

    class iterator {
    public:
        using value_type = SignedMatrix;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        iterator(const SignedCandidates* owner, std::uint64_t i) : owner_(owner), i_(i) {}
        SignedMatrix operator*() const { return (*owner_)[i_]; }
        iterator& operator++() { ++i_; return *this; }
        iterator operator++(int) { auto t = *this; ++i_; return t; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }
    private:
        const SignedCandidates* owner_ = nullptr;
        std::uint64_t i_ = 0;
    };

    [[nodiscard]] iterator begin() const { return {this, 0}; }
    [[nodiscard]] iterator end() const { return {this, size()}; }

private:
    BitMatrix4 pattern_;
    std::vector<std::uint8_t> positions_;  // bit indices of the ones, ascending
};

[[nodiscard]] SignedCandidates signed_candidates(BitMatrix4 m);

enum class ZMode { Full, OrbitReduced };

struct ZVerdict {
    BitMatrix4 matrix;
    int ones = 0;
    /// Sign assignments covered: always 2^k. In orbit-reduced mode this is
    /// representatives * orbit_size.
    std::uint64_t assignments_checked = 0;
    /// Exact rank computations actually performed.
    std::uint64_t representatives = 0;
    std::uint64_t orbit_size = 1;
    int min_rank_found = 4;
    bool verified = false;  // min_rank_found >= 3
    ZMode mode = ZMode::Full;
    std::chrono::microseconds elapsed{0};
};

[[nodiscard]] ZVerdict verify_counterexample_z(BitMatrix4 m, ZMode mode = ZMode::Full);

/// One verdict per input, in input order.
[[nodiscard]] std::vector<ZVerdict> verify_all_z(std::span<const BitMatrix4> matrices,
                                                 ZMode mode = ZMode::Full, int jobs = 1);

}  // namespace hadex
