#include "hadex/bitmatrix.hpp"

#include <charconv>

namespace hadex {

BitMatrix4 from_rows(const Rows& rows) {
    std::uint16_t bits = 0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const int v = rows[r][c];
            if (v != 0 && v != 1)
                throw std::invalid_argument("from_rows: entry (" + std::to_string(r) + ", " +
                                            std::to_string(c) + ") is " + std::to_string(v) +
                                            ", expected 0 or 1");
            if (v) bits |= std::uint16_t(1u << (4 * r + c));
        }
    }
    return BitMatrix4(bits);
}

std::string to_hex(BitMatrix4 m) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(4, '0');
    for (int i = 0; i < 4; ++i) out[3 - i] = digits[(m.bits() >> (4 * i)) & 0xF];
    return out;
}

BitMatrix4 parse_hex(std::string_view text) {
    if (text.size() != 4)
        throw std::invalid_argument("expected 4 hex digits, got '" + std::string(text) + "'");
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("not a hex matrix word: '" + std::string(text) + "'");
    return BitMatrix4(static_cast<std::uint16_t>(value));
}

std::string to_row_string(BitMatrix4 m) {
    std::string out;
    for (int r = 0; r < 4; ++r) {
        if (r) out += '/';
        for (int c = 0; c < 4; ++c) out += char('0' + m.entry(r, c));
    }
    return out;
}

}  // namespace hadex
