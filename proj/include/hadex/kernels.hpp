#pragma once

// Hot inner loop of the product search: AND one factor against a block of
// candidate factors and mark every full-rank product in a 65,536-bit set.
//
// Two implementations exist. The scalar reference looks the product up in a
// precomputed rank table. The AVX2 variant never touches the table; it
// evaluates the GF(2) determinant of sixteen products at once through a
// Laplace expansion along rows 0-1 against rows 2-3. Both must produce
// identical bit sets; the dispatcher picks the best one the CPU supports.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace hadex::kernels {

enum class Backend { Scalar, Avx2 };

[[nodiscard]] std::string_view name(Backend b);
[[nodiscard]] bool is_available(Backend b);
[[nodiscard]] Backend best_available();

/// Parses "scalar", "avx2" or "auto".
[[nodiscard]] Backend parse_backend(std::string_view text);

/// Sets bit (a & factors[j]) of `marks` for every j whose product has rank 4.
/// Returns the number of full-rank products seen, with multiplicity.
///
/// `ranks` must be the 65,536-entry rank table (scalar backend only; the AVX2
/// backend ignores it).
using MarkFn = std::size_t (*)(std::uint16_t a, std::span<const std::uint16_t> factors,
                               const std::uint8_t* ranks, std::uint64_t* marks);

[[nodiscard]] MarkFn mark_full_rank_products(Backend b);

namespace scalar {
std::size_t mark_full_rank_products(std::uint16_t a, std::span<const std::uint16_t> factors,
                                    const std::uint8_t* ranks, std::uint64_t* marks);
/// GF(2) determinant by cofactor expansion; reference for the vector version.
bool is_full_rank(std::uint16_t m);
}  // namespace scalar

namespace avx2 {
std::size_t mark_full_rank_products(std::uint16_t a, std::span<const std::uint16_t> factors,
                                    const std::uint8_t* ranks, std::uint64_t* marks);
/// Full-rank flags for a block of words; out[i] = 1 iff words[i] is invertible.
void full_rank_flags(std::span<const std::uint16_t> words, std::span<std::uint8_t> out);
}  // namespace avx2

}  // namespace hadex::kernels
