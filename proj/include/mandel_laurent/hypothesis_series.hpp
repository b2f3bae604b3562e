#pragma once

#include "combinatorics.hpp"
#include "dyadic.hpp"
#include "series.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace ml {

/// Random B_0..B_L with B_l = R_l / 2^{p_l}, R_l odd with random sign and
/// at most `numerator_bits` bits. These are the series the general inversion
/// statement is about; nothing Mandelbrot-specific is assumed.
inline MonicSeries random_hypothesis_series(std::size_t L, std::mt19937_64 &rng, unsigned numerator_bits = 16)
{
    std::vector<Dyadic> coeffs;
    coeffs.reserve(L + 1);
    for (std::size_t ell = 0; ell <= L; ++ell) {
        mpz_class r = 0;
        for (unsigned filled = 0; filled < numerator_bits; filled += 32) {
            r <<= 32;
            r += static_cast<unsigned long>(rng() & 0xffffffffu);
        }
        if (numerator_bits % 32 != 0) {
            r >>= 32 - numerator_bits % 32;
        }
        r |= 1; // odd
        if (rng() & 1u) {
            r = -r;
        }
        coeffs.emplace_back(std::move(r), static_cast<std::int64_t>(p_of(ell)));
    }
    return MonicSeries(std::move(coeffs));
}

} // namespace ml
