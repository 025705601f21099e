// Seeded randomness. Every random quantity in the library flows through Rng,
// which wraps std::mt19937_64 but implements its own uniform/Gaussian draws:
// the standard distributions are not pinned across library implementations,
// and a seed here is a promise of bit-identical output.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "ltensor/error.hpp"
#include "ltensor/tensor.hpp"

namespace ltensor {

/// Stable per-component seed derivation (splitmix64 finalizer), so one user
/// seed can fan out into independent streams without correlation.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t component) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (component + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (trig form, one cached draw).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    Complex cgaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex{re, im};
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
    Matrix m(rows, cols);
    // Column-major fill order, part of the reproducibility contract.
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = rng.cgaussian();
    return m;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix, with the R
/// diagonal rotated positive so the factorization is unique.
inline Matrix random_unitary_matrix(Index n, std::uint64_t seed) {
    Rng rng(seed);
    const Matrix g = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        const double m = std::abs(d);
        if (m > 0.0) q.col(k) *= d / m;
    }
    return q;
}

/// Complex Gaussian matrix, resampled until cond_2 <= max_cond. Gaussian
/// matrices are almost surely well conditioned at these sizes, so the retry
/// loop nearly always exits on the first draw.
inline Matrix random_invertible_matrix(Index n, std::uint64_t seed, double max_cond = 1e6,
                                       int max_attempts = 16) {
    Rng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const Matrix g = gaussian_matrix(n, n, rng);
        Eigen::JacobiSVD<Matrix> svd(g);
        const double smin = svd.singularValues()(n - 1);
        if (smin > 0.0 && svd.singularValues()(0) / smin <= max_cond) return g;
    }
    throw NumericError("no matrix of size " + std::to_string(n) + " with condition <= " +
                       std::to_string(max_cond) + " found in " + std::to_string(max_attempts) +
                       " attempts (seed " + std::to_string(seed) + ")");
}

/// Tensor with i.i.d. Gaussian entries; real = true zeroes the imaginary
/// parts. Entries are drawn in flat storage order.
inline Tensor random_tensor(const Shape& shape, std::uint64_t seed, bool real = false) {
    Tensor t(shape);
    Rng rng(seed);
    for (Index i = 0; i < t.size(); ++i)
        t[i] = real ? Complex{rng.gaussian(), 0.0} : rng.cgaussian();
    return t;
}

} // namespace ltensor
