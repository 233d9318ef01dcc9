#include "hadex/kernels.hpp"

namespace hadex::kernels::scalar {

std::size_t mark_full_rank_products(std::uint16_t a, std::span<const std::uint16_t> factors,
                                    const std::uint8_t* ranks, std::uint64_t* marks) {
    std::size_t hits = 0;
    for (const std::uint16_t b : factors) {
        const std::uint16_t p = a & b;
        if (ranks[p] == 4) {
            marks[p >> 6] |= std::uint64_t{1} << (p & 63);
            ++hits;
        }
    }
    return hits;
}

bool is_full_rank(std::uint16_t m) {
    const unsigned r0 = m & 0xF, r1 = (m >> 4) & 0xF, r2 = (m >> 8) & 0xF, r3 = (m >> 12) & 0xF;
    // Bit i of top[d] is the 2x2 minor of rows 0-1 on columns (i, i+d); bottom likewise
    // for rows 2-3. Signs vanish over GF(2).
    unsigned top[4], bottom[4];
    for (int d = 1; d <= 3; ++d) {
        top[d] = (r0 & (r1 >> d)) ^ ((r0 >> d) & r1);
        bottom[d] = (r2 & (r3 >> d)) ^ ((r2 >> d) & r3);
    }
    auto bit = [](unsigned v, int i) { return (v >> i) & 1u; };
    const unsigned det = (bit(top[1], 0) & bit(bottom[1], 2))    // {0,1} x {2,3}
                         ^ (bit(top[1], 2) & bit(bottom[1], 0))  // {2,3} x {0,1}
                         ^ (bit(top[1], 1) & bit(bottom[3], 0))  // {1,2} x {0,3}
                         ^ (bit(top[3], 0) & bit(bottom[1], 1))  // {0,3} x {1,2}
                         ^ (bit(top[2], 0) & bit(bottom[2], 1))  // {0,2} x {1,3}
                         ^ (bit(top[2], 1) & bit(bottom[2], 0)); // {1,3} x {0,2}
    return det != 0;
}

}  // namespace hadex::kernels::scalar
