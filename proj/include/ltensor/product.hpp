// The tensor-tensor product and its companions. The product of A (n0 x n1 x
// trailing) and B (n1 x m x trailing) under a transform L is
//
//     A * B = L_inv( facewise( L(A), L(B) ) ),
//
// where facewise multiplies matching matrix slices. Everything downstream
// (inverse, transpose, identity element, unitarity) is defined the same way:
// do the matrix version slice by slice in the transform domain, then map
// back.
//
// Facewise loops are slice-parallel; slices are independent and the output
// ranges are disjoint, so the thread count never changes results.
#pragma once

#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "ltensor/error.hpp"
#include "ltensor/parallel.hpp"
#include "ltensor/tensor.hpp"
#include "ltensor/transforms.hpp"

namespace ltensor {

namespace detail {
inline void require_facewise_compatible(const Tensor& a, const Tensor& b) {
    if (a.trailing_shape() != b.trailing_shape())
        throw ShapeError("product: trailing shapes differ, " + shape_to_string(a.shape()) + " vs " +
                         shape_to_string(b.shape()));
    if (a.cols() != b.rows())
        throw ShapeError("product: inner dimensions differ, " + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
}
} // namespace detail

/// Slice-by-slice matrix product: out slice s = (A slice s) * (B slice s).
inline Tensor facewise_product(const Tensor& a, const Tensor& b) {
    detail::require_facewise_compatible(a, b);
    Shape out_shape{a.rows(), b.cols()};
    const Shape trailing = a.trailing_shape();
    out_shape.insert(out_shape.end(), trailing.begin(), trailing.end());
    Tensor out(out_shape);
    detail::parallel_for(a.slice_count(), [&](Index s) {
        slice_view(out, s).noalias() = slice_view(a, s) * slice_view(b, s);
    });
    return out;
}

/// The transform-domain product described in the file header.
inline Tensor t_product(const Tensor& a, const Tensor& b, const Transform& L) {
    L.check_matches(a);
    L.check_matches(b);
    detail::require_facewise_compatible(a, b);
    return L.inverse(facewise_product(L.forward(a), L.forward(b)));
}

/// Conjugate transpose in the algebra: each transform-domain slice is
/// replaced by its adjoint. Satisfies (A * B)^H = B^H * A^H.
inline Tensor conj_transpose(const Tensor& a, const Transform& L) {
    L.check_matches(a);
    const Tensor ahat = L.forward(a);
    Shape out_shape{a.cols(), a.rows()};
    const Shape trailing = a.trailing_shape();
    out_shape.insert(out_shape.end(), trailing.begin(), trailing.end());
    Tensor out(out_shape);
    detail::parallel_for(ahat.slice_count(),
                         [&](Index s) { slice_view(out, s) = slice_view(ahat, s).adjoint(); });
    return L.inverse(out);
}

/// Multiplicative identity: the tensor whose transform-domain slices are all
/// I_n. Under the plain DFT this is the tube (1, 0, ..., 0) on the diagonal.
inline Tensor identity_tensor(Index n, const Transform& L) {
    Shape shape{n, n};
    const Shape& trailing = L.trailing_shape();
    shape.insert(shape.end(), trailing.begin(), trailing.end());
    Tensor ihat(shape);
    for (Index s = 0; s < ihat.slice_count(); ++s)
        slice_view(ihat, s) = Matrix::Identity(n, n);
    return L.inverse(ihat);
}

/// Inverse in the algebra: slicewise matrix inverse in the transform domain.
/// Throws NumericError naming the first slice whose inverse fails the
/// residual check ||M M^-1 - I||_inf <= 1e-10 * n.
inline Tensor inverse_tensor(const Tensor& a, const Transform& L) {
    if (a.rows() != a.cols())
        throw ShapeError("inverse: leading dimensions must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    L.check_matches(a);
    const Index n = a.rows();
    const Tensor ahat = L.forward(a);
    Tensor out(ahat.shape());
    for (Index s = 0; s < ahat.slice_count(); ++s) {
        Eigen::PartialPivLU<Matrix> lu(matrix_slice(ahat, s));
        Matrix inv = lu.inverse();
        const double err = (slice_view(ahat, s) * inv - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
        if (!(err <= kInverseCheckTol * static_cast<double>(n))) {
            const double cond = slice_view(ahat, s).cwiseAbs().rowwise().sum().maxCoeff() *
                                inv.cwiseAbs().rowwise().sum().maxCoeff();
            std::ostringstream msg;
            msg << "inverse: transform-domain slice " << s << " is numerically singular (residual "
                << err << ", condition estimate " << cond << ")";
            throw NumericError(msg.str());
        }
        slice_view(out, s) = inv;
    }
    return L.inverse(out);
}

/// max(||Q^H * Q - I||_inf, ||Q * Q^H - I||_inf) with I the identity tensor
/// under L; zero for an exactly unitary tensor.
inline double unitary_defect(const Tensor& q, const Transform& L) {
    if (q.rows() != q.cols())
        throw ShapeError("unitary_defect: leading dimensions must be square, got " +
                         std::to_string(q.rows()) + "x" + std::to_string(q.cols()));
    L.check_matches(q);
    const Tensor eye = identity_tensor(q.rows(), L);
    const Tensor qh = conj_transpose(q, L);
    const double left = linf_norm(sub(t_product(qh, q, L), eye));
    const double right = linf_norm(sub(t_product(q, qh, L), eye));
    return std::max(left, right);
}

inline bool is_unitary_tensor(const Tensor& q, const Transform& L, double tol = 1e-9) {
    return unitary_defect(q, L) <= tol;
}

/// Q^H * Q. Every transform-domain slice of the result is Hermitian positive
/// semidefinite.
inline Tensor gram(const Tensor& a, const Transform& L) {
    return t_product(conj_transpose(a, L), a, L);
}

/// Strips imaginary parts when they are collectively negligible (each entry's
/// imaginary magnitude <= tol, default 1e-9 * ||A||_F) and throws otherwise.
/// Products of real data under the plain DFT land here.
inline Tensor into_real(const Tensor& a, double tol = -1.0) {
    if (tol < 0.0) tol = 1e-9 * frobenius(a);
    double worst = 0.0;
    Index worst_at = 0;
    for (Index i = 0; i < a.size(); ++i) {
        const double im = std::abs(a[i].imag());
        if (im > worst) {
            worst = im;
            worst_at = i;
        }
    }
    if (worst > tol)
        throw NumericError("into_real: imaginary part " + std::to_string(worst) + " at flat index " +
                           std::to_string(worst_at) + " exceeds tolerance " + std::to_string(tol));
    Tensor out = a;
    for (Index i = 0; i < out.size(); ++i) out[i] = Complex{out[i].real(), 0.0};
    return out;
}

/// Tube product: the scalar case of t_product. Tubes commute.
inline Tube tube_mul(const Tube& a, const Tube& b, const Transform& L) {
    return Tube(t_product(a.tensor(), b.tensor(), L));
}

} // namespace ltensor
