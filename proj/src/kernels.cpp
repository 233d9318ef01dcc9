#include "hadex/kernels.hpp"

#include <stdexcept>
#include <string>

namespace hadex::kernels {

std::string_view name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

bool is_available(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2:
#if defined(HADEX_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Backend best_available() {
    return is_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

Backend parse_backend(std::string_view text) {
    if (text == "auto") return best_available();
    if (text == "scalar") return Backend::Scalar;
    if (text == "avx2") {
        if (!is_available(Backend::Avx2))
            throw std::runtime_error("avx2 kernels requested but not available on this CPU/build");
        return Backend::Avx2;
    }
    throw std::invalid_argument("unknown kernel backend '" + std::string(text) + "'");
}

MarkFn mark_full_rank_products(Backend b) {
#if defined(HADEX_HAVE_AVX2)
    if (b == Backend::Avx2 && is_available(Backend::Avx2)) return &avx2::mark_full_rank_products;
#endif
    (void)b;
    return &scalar::mark_full_rank_products;
}

}  // namespace hadex::kernels
