// Built with -mavx2; only reached after a runtime CPU check.
#include "hadex/kernels.hpp"

#include <immintrin.h>

namespace hadex::kernels::avx2 {
namespace {

inline __m256i bit_at(__m256i v, int i) {
    return _mm256_and_si256(_mm256_srl_epi16(v, _mm_cvtsi32_si128(i)), _mm256_set1_epi16(1));
}

// 0xFFFF in every lane whose matrix is invertible over GF(2), 0 elsewhere.
inline __m256i full_rank_mask(__m256i w) {
    const __m256i nib = _mm256_set1_epi16(0xF);
    const __m256i r0 = _mm256_and_si256(w, nib);
    const __m256i r1 = _mm256_and_si256(_mm256_srli_epi16(w, 4), nib);
    const __m256i r2 = _mm256_and_si256(_mm256_srli_epi16(w, 8), nib);
    const __m256i r3 = _mm256_srli_epi16(w, 12);

    auto minors = [](__m256i x, __m256i y, int d) {
        const __m128i s = _mm_cvtsi32_si128(d);
        return _mm256_xor_si256(_mm256_and_si256(x, _mm256_srl_epi16(y, s)),
                                _mm256_and_si256(_mm256_srl_epi16(x, s), y));
    };
    const __m256i t1 = minors(r0, r1, 1), t2 = minors(r0, r1, 2), t3 = minors(r0, r1, 3);
    const __m256i b1 = minors(r2, r3, 1), b2 = minors(r2, r3, 2), b3 = minors(r2, r3, 3);

    __m256i det = _mm256_and_si256(bit_at(t1, 0), bit_at(b1, 2));
    det = _mm256_xor_si256(det, _mm256_and_si256(bit_at(t1, 2), bit_at(b1, 0)));
    det = _mm256_xor_si256(det, _mm256_and_si256(bit_at(t1, 1), bit_at(b3, 0)));
    det = _mm256_xor_si256(det, _mm256_and_si256(bit_at(t3, 0), bit_at(b1, 1)));
    det = _mm256_xor_si256(det, _mm256_and_si256(bit_at(t2, 0), bit_at(b2, 1)));
    det = _mm256_xor_si256(det, _mm256_and_si256(bit_at(t2, 1), bit_at(b2, 0)));
    return _mm256_cmpeq_epi16(det, _mm256_set1_epi16(1));
}

}  // namespace

std::size_t mark_full_rank_products(std::uint16_t a, std::span<const std::uint16_t> factors,
                                    const std::uint8_t* ranks, std::uint64_t* marks) {
    const __m256i lhs = _mm256_set1_epi16(static_cast<short>(a));
    std::size_t hits = 0;
    std::size_t j = 0;
    alignas(32) std::uint16_t products[16];
    for (; j + 16 <= factors.size(); j += 16) {
        const __m256i rhs =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(factors.data() + j));
        const __m256i p = _mm256_and_si256(lhs, rhs);
        // Two mask bits per 16-bit lane; keep the even ones.
        unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(full_rank_mask(p))) & 0x55555555u;
        if (!mask) continue;
        _mm256_store_si256(reinterpret_cast<__m256i*>(products), p);
        while (mask) {
            const int lane = __builtin_ctz(mask) >> 1;
            const std::uint16_t m = products[lane];
            marks[m >> 6] |= std::uint64_t{1} << (m & 63);
            ++hits;
            mask &= mask - 1;
        }
    }
    if (j < factors.size())
        hits += scalar::mark_full_rank_products(a, factors.subspan(j), ranks, marks);
    return hits;
}

void full_rank_flags(std::span<const std::uint16_t> words, std::span<std::uint8_t> out) {
    std::size_t j = 0;
    alignas(32) std::uint16_t flags[16];
    for (; j + 16 <= words.size(); j += 16) {
        const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + j));
        _mm256_store_si256(reinterpret_cast<__m256i*>(flags), full_rank_mask(w));
        for (int i = 0; i < 16; ++i) out[j + i] = flags[i] ? 1 : 0;
    }
    for (; j < words.size(); ++j) out[j] = scalar::is_full_rank(words[j]) ? 1 : 0;
}

}  // namespace hadex::kernels::avx2
