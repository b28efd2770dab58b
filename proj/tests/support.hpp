#pragma once

#include "heis/scalar.hpp"

#include <random>

namespace heis::testing {

inline Rational random_rational(std::mt19937_64& rng, long num_bound = 50, long den_bound = 20) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound);
    std::uniform_int_distribution<long> den(1, den_bound);
    return Rational(num(rng), den(rng));
}

inline QuadraticNumber random_quadratic(std::mt19937_64& rng, const QuadraticContext& ctx, long num_bound = 50,
                                        long den_bound = 20) {
    return {random_rational(rng, num_bound, den_bound), random_rational(rng, num_bound, den_bound), ctx};
}

inline QuadraticNumber random_nonneg(std::mt19937_64& rng, const QuadraticContext& ctx) {
    QuadraticNumber q = random_quadratic(rng, ctx, 10, 8);
    return q.sign() < 0 ? -q : q;
}

}  // namespace heis::testing
