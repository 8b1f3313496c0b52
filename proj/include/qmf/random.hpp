// random.hpp: Seeded random operators for the randomized checks

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "qmf/operator_algebra.hpp"

namespace qmf {

using Rng = std::mt19937_64;

// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view text, std::uint64_t hash = 0xcbf29ce484222325ULL)
{
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

// Independent stream per named consumer of a shared seed.
inline Rng substream(std::uint64_t seed, std::string_view name)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(fnv1a(name)),
                      static_cast<std::uint32_t>(fnv1a(name) >> 32)};
    return Rng(seq);
}

inline double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Entries with real and imaginary parts uniform in [-1, 1).
inline Matrix random_matrix(Rng& rng, Index rows, Index cols)
{
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double re = uniform(rng, -1.0, 1.0);
            const double im = uniform(rng, -1.0, 1.0);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

inline Operator random_operator(Rng& rng, Index dim) { return Operator(random_matrix(rng, dim, dim)); }

inline Operator random_hermitian(Rng& rng, Index dim)
{
    const Matrix m = random_matrix(rng, dim, dim);
    return Operator(0.5 * (m + m.adjoint()));
}

inline Operator random_psd(Rng& rng, Index dim)
{
    const Matrix m = random_matrix(rng, dim, dim);
    return Operator(m.adjoint() * m);
}

// Uniform point of the closed unit disc.
inline Complex random_disc_point(Rng& rng)
{
    const double r = std::sqrt(uniform(rng, 0.0, 1.0));
    const double phi = uniform(rng, 0.0, 2.0 * 3.14159265358979323846);
    return std::polar(r, phi);
}

} // namespace qmf
