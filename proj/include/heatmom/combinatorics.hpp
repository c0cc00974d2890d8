#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace heatmom {

/// Multiply with overflow detection. Integer coefficients in this project
/// (binomials, double factorials, powers of the moment matrix) must never
/// wrap silently; anything past 64 bits is a hard error.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("integer overflow in product " + std::to_string(a) +
                                  " * " + std::to_string(b));
    }
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("integer overflow in sum " + std::to_string(a) +
                                  " + " + std::to_string(b));
    }
    return out;
}

/// Binomial coefficient C(n, k) in exact 64-bit arithmetic.
inline std::int64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        // exact at every step: result * (n-k+i) is divisible by i
        result = checked_mul(result, n - k + i) / i;
    }
    return result;
}

/// Double factorial n!! with the convention (-1)!! = 0!! = 1.
inline std::int64_t double_factorial(int n) {
    if (n < -1) throw std::invalid_argument("double_factorial: n < -1");
    std::int64_t result = 1;
    for (int i = n; i >= 2; i -= 2) result = checked_mul(result, i);
    return result;
}

inline std::int64_t factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    std::int64_t result = 1;
    for (int i = 2; i <= n; ++i) result = checked_mul(result, i);
    return result;
}

}  // namespace heatmom
