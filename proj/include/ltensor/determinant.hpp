// Tube-valued determinant of a tensor with square leading dimensions.
//
// det_fast takes the scalar determinant of every transform-domain slice (LU
// with partial pivoting, product of pivots with sign) and maps the resulting
// tube back through L^{-1}. det_recursive is the cofactor expansion along the
// first leading row, with tube products in place of scalar ones; it costs
// O(n!) and exists to validate det_fast, so it is capped at n <= 8.
//
// The determinant of the identity tensor is L^{-1} of the all-ones tube,
// independent of n; identity_det_tube builds that directly.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ltensor/error.hpp"
#include "ltensor/parallel.hpp"
#include "ltensor/product.hpp"
#include "ltensor/tensor.hpp"
#include "ltensor/transforms.hpp"

namespace ltensor {

namespace detail {
inline void require_square_leading(const Tensor& a, const char* op) {
    if (a.rows() != a.cols())
        throw ShapeError(std::string(op) + ": leading dimensions must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}
} // namespace detail

/// Slicewise determinant tube: det of each slice of L(A), mapped back.
inline Tube det_fast(const Tensor& a, const Transform& L) {
    detail::require_square_leading(a, "det_fast");
    L.check_matches(a);
    const Tensor ahat = L.forward(a);
    Shape tube_shape{1, 1};
    const Shape trailing = a.trailing_shape();
    tube_shape.insert(tube_shape.end(), trailing.begin(), trailing.end());
    Tensor dt(tube_shape);
    detail::parallel_for(ahat.slice_count(), [&](Index s) {
        Eigen::PartialPivLU<Matrix> lu(matrix_slice(ahat, s));
        dt[s] = lu.determinant();
    });
    return Tube(L.inverse(dt));
}

namespace detail {

// Leading-submatrix minor: drops one row and one column of every slice,
// leaving trailing axes untouched. Acting on leading indices commutes with
// any transform, so cofactors can be taken in the original domain.
inline Tensor leading_minor(const Tensor& a, Index drop_row, Index drop_col) {
    Shape shape = a.shape();
    shape[0] -= 1;
    shape[1] -= 1;
    Tensor out(shape);
    for (Index s = 0; s < a.slice_count(); ++s) {
        auto src = slice_view(a, s);
        auto dst = slice_view(out, s);
        for (Index j = 0, dj = 0; j < a.cols(); ++j) {
            if (j == drop_col) continue;
            for (Index i = 0, di = 0; i < a.rows(); ++i) {
                if (i == drop_row) continue;
                dst(di++, dj) = src(i, j);
            }
            ++dj;
        }
    }
    return out;
}

} // namespace detail

/// Cofactor expansion along the first leading row, tubes in place of scalars:
///     det(A) = sum_j (-1)^j a(0, j, :) * det(minor_{0j}).
/// Reference implementation; n <= 8.
inline Tube det_recursive(const Tensor& a, const Transform& L) {
    detail::require_square_leading(a, "det_recursive");
    L.check_matches(a);
    const Index n = a.rows();
    if (n > 8)
        throw ShapeError("det_recursive: n = " + std::to_string(n) +
                         " exceeds the n <= 8 cap (cofactor expansion is factorial)");
    if (n == 1) return tube_at(a, 0, 0);
    Tube acc = Tube::zeros(a.trailing_shape());
    for (Index j = 0; j < n; ++j) {
        const Tube term =
            tube_mul(tube_at(a, 0, j), det_recursive(detail::leading_minor(a, 0, j), L), L);
        acc = (j % 2 == 0) ? tube_add(acc, term) : tube_sub(acc, term);
    }
    return acc;
}

/// L^{-1} of the all-ones tube: the determinant of every identity tensor
/// under L, for any leading size.
inline Tube identity_det_tube(const Transform& L) {
    Shape tube_shape{1, 1};
    const Shape& trailing = L.trailing_shape();
    tube_shape.insert(tube_shape.end(), trailing.begin(), trailing.end());
    Tensor t(tube_shape);
    for (Index i = 0; i < t.size(); ++i) t[i] = Complex{1.0, 0.0};
    return Tube(L.inverse(t));
}

} // namespace ltensor
