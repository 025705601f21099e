// Reference implementation used only by tests and the `verify` CLI
// subcommand. Never include this from library code.
//
// The third-order product has a matrix formulation: embed A into a block
// circulant, stack B's frontal slices into a tall matrix, multiply, restack:
//
//     t_product_classic(A, B) = fold(bcirc(A) * mat_vec(B)).
//
// Conjugating bcirc(A) by DFT Kronecker factors block-diagonalizes it, and
// the diagonal blocks are exactly the transform-domain slices the main path
// computes by mode products; verify_block_diagonalization measures both
// facts. For order > 3 the embedding nests: each trailing axis wraps the
// previous level's blocks circulantly (axis 2 innermost), and the
// conjugation factors are F_{n_{p-1}} (x) ... (x) F_{n_2} (x) I, applied with
// true inverses on the right.
//
// Everything here is deliberately naive and self-contained: own entry
// arithmetic, own Fourier matrix, own Kronecker product. Independence from
// the main path is the point; do not "deduplicate" against tensor.hpp or
// transforms.hpp.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ltensor/error.hpp"
#include "ltensor/tensor.hpp"
#include "ltensor/transforms.hpp"

namespace ltensor::oracle {

namespace detail {

// Flat offset of (i, j, k) in an n1 x n2 x n3 tensor, first index fastest.
inline Complex entry3(const Tensor& a, Index i, Index j, Index k) {
    return a.data()[i + a.shape()[0] * (j + a.shape()[1] * k)];
}

inline Matrix fourier(Index n) {
    Matrix f(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) {
            const double angle = -2.0 * M_PI * static_cast<double>(j) * static_cast<double>(k) /
                                 static_cast<double>(n);
            f(j, k) = Complex{std::cos(angle), std::sin(angle)};
        }
    return f;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index r = 0; r < a.rows(); ++r)
        for (Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

inline void require_order3(const Tensor& a, const char* op) {
    if (a.order() != 3)
        throw ShapeError(std::string(op) + ": expects an order-3 tensor, got order " +
                         std::to_string(a.order()));
}

inline void require_rows_within_guard(Index rows) {
    if (rows > 4096)
        throw ShapeError("oracle matrix would have " + std::to_string(rows) +
                         " rows; refusing above 4096 (reference path only)");
}

// Order-(p-1) tensor fixing the last axis at k. The last axis is the
// slowest-varying one, so this is a contiguous chunk of storage.
inline Tensor drop_last_axis(const Tensor& a, Index k) {
    Shape sub(a.shape().begin(), a.shape().end() - 1);
    const Index chunk = a.size() / a.shape().back();
    std::vector<Complex> data(a.data() + k * chunk, a.data() + (k + 1) * chunk);
    return Tensor(std::move(sub), std::move(data));
}

// Recursive circulant embedding over trailing axes, innermost first. Order 2
// is the matrix itself.
inline Matrix nested_bcirc(const Tensor& a) {
    if (a.order() == 2) {
        Matrix m(a.shape()[0], a.shape()[1]);
        for (Index j = 0; j < m.cols(); ++j)
            for (Index i = 0; i < m.rows(); ++i) m(i, j) = a.data()[i + m.rows() * j];
        return m;
    }
    const Index n_last = a.shape().back();
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(n_last));
    for (Index k = 0; k < n_last; ++k) blocks.push_back(nested_bcirc(drop_last_axis(a, k)));
    const Index br = blocks[0].rows();
    const Index bc = blocks[0].cols();
    Matrix out(n_last * br, n_last * bc);
    for (Index r = 0; r < n_last; ++r)
        for (Index c = 0; c < n_last; ++c)
            out.block(r * br, c * bc, br, bc) = blocks[static_cast<std::size_t>((r - c + n_last) % n_last)];
    return out;
}

} // namespace detail

/// Block-circulant embedding of an order-3 tensor: block (r, c) is frontal
/// slice (r - c) mod n3, giving an (n1 n3) x (n2 n3) matrix.
inline Matrix bcirc(const Tensor& a) {
    detail::require_order3(a, "bcirc");
    detail::require_rows_within_guard(a.shape()[0] * a.shape()[2]);
    return detail::nested_bcirc(a);
}

/// Frontal slices stacked vertically: an (n1 n3) x n2 matrix whose row block
/// k is slice k.
inline Matrix mat_vec(const Tensor& a) {
    detail::require_order3(a, "mat_vec");
    const Index n1 = a.shape()[0], n2 = a.shape()[1], n3 = a.shape()[2];
    Matrix m(n1 * n3, n2);
    for (Index k = 0; k < n3; ++k)
        for (Index j = 0; j < n2; ++j)
            for (Index i = 0; i < n1; ++i) m(i + n1 * k, j) = detail::entry3(a, i, j, k);
    return m;
}

/// Inverse of mat_vec: restack an (n1 n3) x n2 matrix into an order-3 tensor.
inline Tensor fold(const Matrix& m, Index n1, Index n2, Index n3) {
    if (m.rows() != n1 * n3 || m.cols() != n2)
        throw ShapeError("fold: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(n1 * n3) + "x" +
                         std::to_string(n2));
    Tensor out(Shape{n1, n2, n3});
    for (Index k = 0; k < n3; ++k)
        for (Index j = 0; j < n2; ++j)
            for (Index i = 0; i < n1; ++i) out.data()[i + n1 * (j + n2 * k)] = m(i + n1 * k, j);
    return out;
}

/// fold(bcirc(A) * mat_vec(B)): the matrix formulation of the order-3
/// product. Real inputs come out with exactly zero imaginary parts.
inline Tensor t_product_classic(const Tensor& a, const Tensor& b) {
    detail::require_order3(a, "t_product_classic");
    detail::require_order3(b, "t_product_classic");
    if (a.shape()[1] != b.shape()[0] || a.shape()[2] != b.shape()[2])
        throw ShapeError("t_product_classic: shapes " + ltensor::detail::shape_to_string(a.shape()) +
                         " and " + ltensor::detail::shape_to_string(b.shape()) + " do not compose");
    const Matrix m = bcirc(a) * mat_vec(b);
    return fold(m, a.shape()[0], b.shape()[1], a.shape()[2]);
}

enum class Kind { third_order, p_order };

struct BlockDiagReport {
    double off_block_max = 0.0;      // largest magnitude outside the diagonal blocks
    double block_vs_slice_rel = 0.0; // worst relative gap between a diagonal block
                                     // and the matching forward-DFT slice
};

/// Conjugates the (nested) block circulant of A by the DFT Kronecker factors
/// and measures (a) how far the result is from block diagonal and (b) how far
/// the diagonal blocks are from the transform-domain slices of the main path.
/// Diagonal block d corresponds to flat slice index d (axis-2 index fastest).
inline BlockDiagReport verify_block_diagonalization(const Tensor& a, Kind kind) {
    if (kind == Kind::third_order) detail::require_order3(a, "verify_block_diagonalization");
    if (a.order() < 3)
        throw ShapeError("verify_block_diagonalization: expects order >= 3, got " +
                         std::to_string(a.order()));
    const Index n1 = a.shape()[0], n2 = a.shape()[1];
    Index slice_total = 1;
    for (std::size_t k = 2; k < a.shape().size(); ++k) slice_total *= a.shape()[k];
    detail::require_rows_within_guard(n1 * slice_total);

    Matrix left = Matrix::Identity(n1, n1);
    Matrix right = Matrix::Identity(n2, n2);
    for (std::size_t k = 2; k < a.shape().size(); ++k) {
        const Matrix f = detail::fourier(a.shape()[k]);
        const Matrix f_inv = f.adjoint() / static_cast<double>(a.shape()[k]);
        left = detail::kron(f, left);
        right = detail::kron(f_inv, right);
    }
    const Matrix conjugated = left * detail::nested_bcirc(a) * right;

    const Tensor ahat = Transform::dft(a.trailing_shape()).forward(a);

    BlockDiagReport report;
    for (Index r = 0; r < conjugated.rows(); ++r)
        for (Index c = 0; c < conjugated.cols(); ++c)
            if (r / n1 != c / n2)
                report.off_block_max = std::max(report.off_block_max, std::abs(conjugated(r, c)));
    for (Index d = 0; d < slice_total; ++d) {
        const Matrix block = conjugated.block(d * n1, d * n2, n1, n2);
        const Matrix slice = matrix_slice(ahat, d);
        const double denom = std::max(slice.norm(), 1e-300);
        report.block_vs_slice_rel =
            std::max(report.block_vs_slice_rel, (block - slice).norm() / denom);
    }
    return report;
}

} // namespace ltensor::oracle
