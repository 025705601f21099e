// Synthetic tensors with prescribed transform-domain structure: exact
// per-slice ranks and per-slice unitary tensors. Both build their slices in
// the transform domain and map back, so the structure is exact there up to
// the single L^{-1}/L round trip.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ltensor/error.hpp"
#include "ltensor/random.hpp"
#include "ltensor/tensor.hpp"
#include "ltensor/transforms.hpp"

namespace ltensor {

/// Tensor whose transform-domain slice i has exactly rank ranks[i]: each
/// slice is U diag(s) V^H with Haar-unitary factors and singular values drawn
/// uniformly from [smin, smax]. Keeping smin well above zero keeps the
/// numeric rank decision far from the threshold.
inline Tensor random_multirank_tensor(const Shape& shape, const std::vector<Index>& ranks,
                                      const Transform& L, std::uint64_t seed, double smin = 1.0,
                                      double smax = 2.0) {
    Tensor that(shape);
    L.check_matches(that);
    const Index n1 = that.rows(), n2 = that.cols();
    const Index k = std::min(n1, n2);
    if (static_cast<Index>(ranks.size()) != that.slice_count())
        throw ShapeError("generator: got " + std::to_string(ranks.size()) + " ranks for " +
                         std::to_string(that.slice_count()) + " slices");
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (ranks[i] < 0 || ranks[i] > k)
            throw ShapeError("generator: rank " + std::to_string(ranks[i]) + " for slice " +
                             std::to_string(i) + " outside [0," + std::to_string(k) + "]");
    if (!(0.0 < smin && smin <= smax))
        throw Error("generator: singular value range [" + std::to_string(smin) + "," +
                    std::to_string(smax) + "] is invalid");

    for (Index i = 0; i < that.slice_count(); ++i) {
        const Index r = ranks[static_cast<std::size_t>(i)];
        auto dst = slice_view(that, i);
        dst.setZero();
        if (r == 0) continue;
        const Matrix u = random_unitary_matrix(n1, derive_seed(seed, 3 * i));
        const Matrix v = random_unitary_matrix(n2, derive_seed(seed, 3 * i + 1));
        Rng rng(derive_seed(seed, 3 * i + 2));
        std::vector<double> vals(static_cast<std::size_t>(r));
        for (double& s : vals) s = smin + (smax - smin) * rng.uniform();
        std::sort(vals.begin(), vals.end(), std::greater<double>());
        Matrix d = Matrix::Zero(r, r);
        for (Index j = 0; j < r; ++j) d(j, j) = Complex{vals[static_cast<std::size_t>(j)], 0.0};
        dst.noalias() = u.leftCols(r) * d * v.leftCols(r).adjoint();
    }
    return L.inverse(that);
}

inline Tensor random_multirank_tensor(const Shape& shape, Index rank, const Transform& L,
                                      std::uint64_t seed, double smin = 1.0, double smax = 2.0) {
    Index slices = 1;
    for (std::size_t i = 2; i < shape.size(); ++i) slices *= shape[i];
    return random_multirank_tensor(shape, std::vector<Index>(static_cast<std::size_t>(slices), rank),
                                   L, seed, smin, smax);
}

/// Unitary tensor under L: every transform-domain slice is an independent
/// Haar-unitary matrix.
inline Tensor random_unitary_tensor(Index n, const Transform& L, std::uint64_t seed) {
    Shape shape{n, n};
    const Shape& trailing = L.trailing_shape();
    shape.insert(shape.end(), trailing.begin(), trailing.end());
    Tensor qhat(shape);
    for (Index i = 0; i < qhat.slice_count(); ++i)
        slice_view(qhat, i) = random_unitary_matrix(n, derive_seed(seed, i));
    return L.inverse(qhat);
}

} // namespace ltensor
