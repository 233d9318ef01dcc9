#pragma once

// 4x4 matrices over GF(2) packed into a single 16-bit word.
//
// Entry (r, c) lives at bit 4*r + c, least-significant bit first, so row r is
// the nibble (bits >> 4*r) & 0xF with column 0 in its lowest bit. The
// canonical text form is the word as 4 lowercase hex digits ("127f").

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hadex {

class BitMatrix4 {
public:
    constexpr BitMatrix4() = default;
    constexpr explicit BitMatrix4(std::uint16_t bits) : bits_(bits) {}

    [[nodiscard]] constexpr std::uint16_t bits() const { return bits_; }

    [[nodiscard]] constexpr int entry(int r, int c) const {
        return (bits_ >> (4 * r + c)) & 1;
    }

    [[nodiscard]] constexpr unsigned row(int r) const {
        return (bits_ >> (4 * r)) & 0xFu;
    }

    [[nodiscard]] constexpr BitMatrix4 transposed() const {
        std::uint16_t out = 0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (entry(r, c)) out |= std::uint16_t(1u << (4 * c + r));
        return BitMatrix4(out);
    }

    static constexpr BitMatrix4 identity() { return BitMatrix4(0x8421); }
    static constexpr BitMatrix4 ones() { return BitMatrix4(0xFFFF); }

    friend constexpr bool operator==(BitMatrix4, BitMatrix4) = default;
    friend constexpr auto operator<=>(BitMatrix4, BitMatrix4) = default;

private:
    std::uint16_t bits_ = 0;
};

inline constexpr std::size_t kMatrixCount = 1u << 16;

using Rows = std::array<std::array<int, 4>, 4>;

/// GF(2) rank, 0..4.
struct Rank {
    int value = 0;
    friend constexpr bool operator==(Rank, Rank) = default;
    friend constexpr auto operator<=>(Rank, Rank) = default;
};

/// Gaussian elimination on the four row nibbles.
[[nodiscard]] constexpr Rank rank_gf2(BitMatrix4 m) {
    std::array<unsigned, 4> rows{m.row(0), m.row(1), m.row(2), m.row(3)};
    int rank = 0;
    for (unsigned col = 0; col < 4 && rank < 4; ++col) {
        const unsigned mask = 1u << col;
        int pivot = -1;
        for (int i = rank; i < 4; ++i) {
            if (rows[i] & mask) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int i = rank + 1; i < 4; ++i)
            if (rows[i] & mask) rows[i] ^= rows[rank];
        ++rank;
    }
    return Rank{rank};
}

/// Entrywise product; over GF(2) this is AND.
[[nodiscard]] constexpr BitMatrix4 hadamard(BitMatrix4 a, BitMatrix4 b) {
    return BitMatrix4(std::uint16_t(a.bits() & b.bits()));
}

[[nodiscard]] constexpr int count_ones(BitMatrix4 m) { return std::popcount(m.bits()); }

[[nodiscard]] constexpr Rows to_rows(BitMatrix4 m) {
    Rows rows{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rows[r][c] = m.entry(r, c);
    return rows;
}

/// Throws std::invalid_argument on any entry outside {0, 1}.
[[nodiscard]] BitMatrix4 from_rows(const Rows& rows);

/// Four lowercase hex digits.
[[nodiscard]] std::string to_hex(BitMatrix4 m);

/// Accepts exactly four hex digits (either case). Throws std::invalid_argument.
[[nodiscard]] BitMatrix4 parse_hex(std::string_view text);

/// Rows as "1111/1110/0100/1000".
[[nodiscard]] std::string to_row_string(BitMatrix4 m);

}  // namespace hadex
