// Invertible linear transforms along the trailing axes. A Transform holds one
// square matrix per axis k >= 2 (sized to that axis) together with its
// inverse; applying it maps a tensor into the domain where products act
// slicewise.
//
// forward(A) = A x_2 T_2 x_3 T_3 ... x_{p-1} T_{p-1}   (mode products, 0-based
// axes, ascending order); inverse(A) applies the inverse matrices in
// descending order. The mode products along distinct axes commute, so the
// order is a convention, not a requirement.
//
// Built-in families and their inverses:
//   identity       I per axis; forward/inverse return the input unchanged
//   dft            F(j,k) = w^(jk), w = exp(-2*pi*i/n); inverse (1/n) F^H
//   dft-unitary    F / sqrt(n); inverse F^H
//   dct            orthonormal DCT-II; inverse C^T
//   random-unitary QR of a seeded complex Gaussian; inverse Q^H
//   random         seeded complex Gaussian, resampled until cond_2 <= 1e6;
//                  inverse computed by LU and validated
//
// The unitary() flag is measured, not assumed: every matrix must satisfy
// ||T^H T - I||_inf <= 1e-10.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ltensor/error.hpp"
#include "ltensor/random.hpp"
#include "ltensor/tensor.hpp"

namespace ltensor {

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kInverseCheckTol = 1e-10;

/// DFT matrix with entries w^(jk), w = exp(-2*pi*i/n), no normalization.
inline Matrix dft_matrix(Index n) {
    Matrix f(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) {
            const double angle = -2.0 * M_PI * static_cast<double>(j) * static_cast<double>(k) /
                                 static_cast<double>(n);
            f(j, k) = Complex{std::cos(angle), std::sin(angle)};
        }
    return f;
}

/// Orthonormal DCT-II: C(j,k) = c_j cos(pi j (2k+1) / (2n)) with
/// c_0 = sqrt(1/n), c_j = sqrt(2/n) otherwise. Real orthogonal.
inline Matrix dct_matrix(Index n) {
    Matrix c(n, n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (Index j = 0; j < n; ++j) {
        const double cj = std::sqrt((j == 0 ? 1.0 : 2.0) * inv_n);
        for (Index k = 0; k < n; ++k) {
            const double angle = M_PI * static_cast<double>(j) * (2.0 * static_cast<double>(k) + 1.0) /
                                 (2.0 * static_cast<double>(n));
            c(j, k) = Complex{cj * std::cos(angle), 0.0};
        }
    }
    return c;
}

class Transform {
public:
    static Transform identity(const Shape& trailing) {
        std::vector<Matrix> mats, invs;
        for (Index n : trailing) {
            mats.push_back(Matrix::Identity(n, n));
            invs.push_back(Matrix::Identity(n, n));
        }
        Transform t("identity", trailing, std::move(mats), std::move(invs));
        t.identity_passthrough_ = true;
        return t;
    }

    static Transform dft(const Shape& trailing) {
        std::vector<Matrix> mats, invs;
        for (Index n : trailing) {
            Matrix f = dft_matrix(n);
            invs.push_back(f.adjoint() / static_cast<double>(n));
            mats.push_back(std::move(f));
        }
        return Transform("dft", trailing, std::move(mats), std::move(invs));
    }

    static Transform dft_unitary(const Shape& trailing) {
        std::vector<Matrix> mats, invs;
        for (Index n : trailing) {
            Matrix f = dft_matrix(n) / std::sqrt(static_cast<double>(n));
            invs.push_back(f.adjoint());
            mats.push_back(std::move(f));
        }
        return Transform("dft-unitary", trailing, std::move(mats), std::move(invs));
    }

    static Transform dct(const Shape& trailing) {
        std::vector<Matrix> mats, invs;
        for (Index n : trailing) {
            Matrix c = dct_matrix(n);
            invs.push_back(c.transpose());
            mats.push_back(std::move(c));
        }
        return Transform("dct", trailing, std::move(mats), std::move(invs));
    }

    /// One independent Haar-unitary matrix per axis, derived from `seed`.
    static Transform random_unitary(const Shape& trailing, std::uint64_t seed) {
        std::vector<Matrix> mats, invs;
        for (std::size_t k = 0; k < trailing.size(); ++k) {
            Matrix q = random_unitary_matrix(trailing[k], derive_seed(seed, k));
            invs.push_back(q.adjoint());
            mats.push_back(std::move(q));
        }
        return Transform("random-unitary:" + std::to_string(seed), trailing, std::move(mats),
                         std::move(invs));
    }

    /// One seeded Gaussian matrix per axis with a numerically computed,
    /// validated inverse.
    static Transform random_invertible(const Shape& trailing, std::uint64_t seed,
                                       double max_cond = 1e6) {
        std::vector<Matrix> mats;
        for (std::size_t k = 0; k < trailing.size(); ++k) {
            try {
                mats.push_back(random_invertible_matrix(trailing[k], derive_seed(seed, k), max_cond));
            } catch (const NumericError& e) {
                throw TransformError("random transform, axis " + std::to_string(k + 2) + ": " +
                                     e.what());
            }
        }
        return with_numeric_inverses("random:" + std::to_string(seed), trailing, std::move(mats));
    }

    /// User-supplied matrices (one per trailing axis); inverses are computed
    /// by LU and validated against ||T T^-1 - I||_inf <= tol * n.
    static Transform from_matrices(const std::string& name, const Shape& trailing,
                                   std::vector<Matrix> mats) {
        if (mats.size() != trailing.size())
            throw TransformError(name + ": got " + std::to_string(mats.size()) + " matrices for " +
                                 std::to_string(trailing.size()) + " trailing axes");
        for (std::size_t k = 0; k < mats.size(); ++k) {
            if (mats[k].rows() != trailing[k] || mats[k].cols() != trailing[k])
                throw TransformError(name + ", axis " + std::to_string(k + 2) + ": matrix is " +
                                     std::to_string(mats[k].rows()) + "x" +
                                     std::to_string(mats[k].cols()) + ", axis has size " +
                                     std::to_string(trailing[k]));
        }
        return with_numeric_inverses(name, trailing, std::move(mats));
    }

    const std::string& name() const { return name_; }
    const Shape& trailing_shape() const { return trailing_; }
    Index axes() const { return static_cast<Index>(mats_.size()); }
    const Matrix& matrix(Index k) const { return mats_[static_cast<std::size_t>(k)]; }
    const Matrix& inverse_matrix(Index k) const { return invs_[static_cast<std::size_t>(k)]; }
    bool unitary() const { return unitary_; }

    void check_matches(const Tensor& a) const {
        if (a.trailing_shape() != trailing_)
            throw TransformError("transform " + name_ + " expects trailing shape " +
                                 detail::shape_to_string(trailing_) + ", tensor has " +
                                 detail::shape_to_string(a.trailing_shape()));
    }

    bool same_as(const Transform& other) const {
        return name_ == other.name_ && trailing_ == other.trailing_;
    }

    Tensor forward(const Tensor& a) const {
        check_matches(a);
        if (identity_passthrough_) return a;
        Tensor out = a;
        for (Index k = 0; k < axes(); ++k) out = mode_product(out, mats_[static_cast<std::size_t>(k)], k + 2);
        return out;
    }

    Tensor inverse(const Tensor& a) const {
        check_matches(a);
        if (identity_passthrough_) return a;
        Tensor out = a;
        for (Index k = axes() - 1; k >= 0; --k)
            out = mode_product(out, invs_[static_cast<std::size_t>(k)], k + 2);
        return out;
    }

private:
    Transform(std::string name, Shape trailing, std::vector<Matrix> mats, std::vector<Matrix> invs)
        : name_(std::move(name)), trailing_(std::move(trailing)), mats_(std::move(mats)),
          invs_(std::move(invs)) {
        unitary_ = true;
        for (const Matrix& m : mats_) {
            const Index n = m.rows();
            const double err = (m.adjoint() * m - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
            if (err > kUnitaryTol) {
                unitary_ = false;
                break;
            }
        }
    }

    static Transform with_numeric_inverses(const std::string& name, const Shape& trailing,
                                           std::vector<Matrix> mats) {
        std::vector<Matrix> invs;
        for (std::size_t k = 0; k < mats.size(); ++k) {
            const Index n = mats[k].rows();
            Eigen::PartialPivLU<Matrix> lu(mats[k]);
            Matrix inv = lu.inverse();
            const double err = (mats[k] * inv - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
            if (!(err <= kInverseCheckTol * static_cast<double>(n)))
                throw TransformError(name + ", axis " + std::to_string(k + 2) +
                                     ": matrix is numerically singular (inverse residual " +
                                     std::to_string(err) + ")");
            invs.push_back(std::move(inv));
        }
        return Transform(name, trailing, std::move(mats), std::move(invs));
    }

    std::string name_;
    Shape trailing_;
    std::vector<Matrix> mats_;
    std::vector<Matrix> invs_;
    bool unitary_ = false;
    bool identity_passthrough_ = false;
};

} // namespace ltensor
