// Dense order-p complex tensor storage with a fixed linearization, matrix
// slices, mode-m products, and elementwise arithmetic.
//
// Layout contract: entries are stored first-index-fastest (column-major
// style). With 0-based indices (i_0, ..., i_{p-1}) and shape
// (n_0, ..., n_{p-1}), the flat offset is
//
//     i_0 + n_0 * (i_1 + n_1 * (i_2 + ...)).
//
// Docs and file formats state the same rule 1-based: offset =
// sum_k (i_k - 1) * prod_{j<k} n_j. The layout is never configurable.
//
// A consequence used throughout: the matrix slice with flat slice index s
// (trailing indices linearized i_2-fastest) occupies the contiguous range
// [s * n_0 * n_1, (s + 1) * n_0 * n_1) and maps onto an n_0 x n_1
// column-major Eigen matrix with zero copies.
//
// Tensors hold std::complex<double> always; real data is stored with zero
// imaginary parts. Operations are pure functions returning new tensors, so
// values can be shared read-only across threads.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ltensor/error.hpp"
#include "ltensor/tensor_fwd.hpp"

namespace ltensor {

using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;

namespace detail {

inline std::string shape_to_string(std::span<const Index> shape) {
    std::ostringstream out;
    out << "(";
    for (std::size_t k = 0; k < shape.size(); ++k) {
        if (k) out << ",";
        out << shape[k];
    }
    out << ")";
    return out.str();
}

inline Index checked_element_count(std::span<const Index> shape) {
    if (shape.size() < 2)
        throw ShapeError("tensor order must be >= 2, got " + std::to_string(shape.size()));
    Index total = 1;
    for (std::size_t k = 0; k < shape.size(); ++k) {
        const Index n = shape[k];
        if (n < 1)
            throw ShapeError("axis " + std::to_string(k) + " has size " + std::to_string(n) +
                             "; every axis must be >= 1");
        if (total > (Index{1} << 62) / n)
            throw ShapeError("element count overflow for shape " + shape_to_string(shape));
        total *= n;
    }
    return total;
}

} // namespace detail

/// Bijection between the flat slice index s in [0, n_2*...*n_{p-1}) and the
/// trailing multi-index (i_2, ..., i_{p-1}), with i_2 varying fastest:
///     s = i_2 + n_2 * (i_3 + n_3 * (i_4 + ...)).
class SliceIndexMap {
public:
    explicit SliceIndexMap(Shape trailing_shape) : trailing_(std::move(trailing_shape)) {
        total_ = 1;
        for (Index n : trailing_) {
            if (n < 1) throw ShapeError("trailing axis sizes must be >= 1");
            total_ *= n;
        }
    }

    const Shape& trailing_shape() const { return trailing_; }
    Index total() const { return total_; }

    std::vector<Index> to_multi(Index flat) const {
        if (flat < 0 || flat >= total_)
            throw ShapeError("slice index " + std::to_string(flat) + " out of range [0," +
                             std::to_string(total_) + ")");
        std::vector<Index> multi(trailing_.size());
        for (std::size_t k = 0; k < trailing_.size(); ++k) {
            multi[k] = flat % trailing_[k];
            flat /= trailing_[k];
        }
        return multi;
    }

    Index to_flat(std::span<const Index> multi) const {
        if (multi.size() != trailing_.size())
            throw ShapeError("trailing multi-index has wrong length");
        Index flat = 0;
        Index stride = 1;
        for (std::size_t k = 0; k < trailing_.size(); ++k) {
            if (multi[k] < 0 || multi[k] >= trailing_[k])
                throw ShapeError("trailing index " + std::to_string(multi[k]) +
                                 " out of range on axis " + std::to_string(k + 2));
            flat += multi[k] * stride;
            stride *= trailing_[k];
        }
        return flat;
    }

private:
    Shape trailing_;
    Index total_ = 1;
};

/// Dense order-p tensor of complex doubles. See the file header for the
/// layout contract.
class Tensor {
public:
    Tensor() = default;

    /// Zero-filled tensor of the given shape (order >= 2, all axes >= 1).
    explicit Tensor(Shape shape) : shape_(std::move(shape)) {
        data_.assign(static_cast<std::size_t>(detail::checked_element_count(shape_)), Complex{0.0, 0.0});
    }

    Tensor(Shape shape, std::vector<Complex> data) : shape_(std::move(shape)), data_(std::move(data)) {
        const Index expected = detail::checked_element_count(shape_);
        if (static_cast<Index>(data_.size()) != expected)
            throw ShapeError("data length " + std::to_string(data_.size()) +
                             " does not match shape " + detail::shape_to_string(shape_) +
                             " (expected " + std::to_string(expected) + ")");
    }

    Index order() const { return static_cast<Index>(shape_.size()); }
    const Shape& shape() const { return shape_; }
    Index dim(Index axis) const { return shape_[static_cast<std::size_t>(axis)]; }
    Index size() const { return static_cast<Index>(data_.size()); }

    /// Leading (slice) dimensions n_0, n_1.
    Index rows() const { return shape_[0]; }
    Index cols() const { return shape_[1]; }

    Shape trailing_shape() const { return Shape(shape_.begin() + 2, shape_.end()); }
    Index slice_count() const { return size() / (rows() * cols()); }
    SliceIndexMap slice_map() const { return SliceIndexMap(trailing_shape()); }

    const Complex* data() const { return data_.data(); }
    Complex* data() { return data_.data(); }
    const std::vector<Complex>& storage() const { return data_; }

    Complex& operator[](Index flat) { return data_[static_cast<std::size_t>(flat)]; }
    const Complex& operator[](Index flat) const { return data_[static_cast<std::size_t>(flat)]; }

    Index flat_offset(std::span<const Index> multi) const {
        if (static_cast<Index>(multi.size()) != order())
            throw ShapeError("index has " + std::to_string(multi.size()) + " entries for an order-" +
                             std::to_string(order()) + " tensor");
        Index offset = 0;
        Index stride = 1;
        for (std::size_t k = 0; k < multi.size(); ++k) {
            if (multi[k] < 0 || multi[k] >= shape_[k])
                throw ShapeError("index " + std::to_string(multi[k]) + " out of range on axis " +
                                 std::to_string(k));
            offset += multi[k] * stride;
            stride *= shape_[k];
        }
        return offset;
    }

    Complex& at(std::span<const Index> multi) { return data_[static_cast<std::size_t>(flat_offset(multi))]; }
    const Complex& at(std::span<const Index> multi) const {
        return data_[static_cast<std::size_t>(flat_offset(multi))];
    }

    template <typename... I>
    Complex& operator()(I... indices) {
        const Index multi[] = {static_cast<Index>(indices)...};
        return at(std::span<const Index>(multi, sizeof...(I)));
    }

    template <typename... I>
    const Complex& operator()(I... indices) const {
        const Index multi[] = {static_cast<Index>(indices)...};
        return at(std::span<const Index>(multi, sizeof...(I)));
    }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

private:
    Shape shape_;
    std::vector<Complex> data_;
};

// ---------------------------------------------------------------------------
// Matrix slices
// ---------------------------------------------------------------------------

/// Zero-copy view of slice s as an n_0 x n_1 column-major matrix.
inline ConstMatrixMap slice_view(const Tensor& a, Index s) {
    if (s < 0 || s >= a.slice_count())
        throw ShapeError("slice index " + std::to_string(s) + " out of range [0," +
                         std::to_string(a.slice_count()) + ")");
    return ConstMatrixMap(a.data() + s * a.rows() * a.cols(), a.rows(), a.cols());
}

/// Mutable view, for assembling a tensor slice by slice before it escapes.
inline MatrixMap slice_view(Tensor& a, Index s) {
    if (s < 0 || s >= a.slice_count())
        throw ShapeError("slice index " + std::to_string(s) + " out of range [0," +
                         std::to_string(a.slice_count()) + ")");
    return MatrixMap(a.data() + s * a.rows() * a.cols(), a.rows(), a.cols());
}

/// The matrix slice with flat slice index s, as an owning copy.
inline Matrix matrix_slice(const Tensor& a, Index s) { return slice_view(a, s); }

/// Returns a copy of `a` whose slice s is replaced by `m`.
inline Tensor set_matrix_slice(const Tensor& a, Index s, const Matrix& m) {
    if (m.rows() != a.rows() || m.cols() != a.cols())
        throw ShapeError("slice assignment shape mismatch: got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", tensor slices are " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
    Tensor out = a;
    slice_view(out, s) = m;
    return out;
}

// ---------------------------------------------------------------------------
// Mode-m product
// ---------------------------------------------------------------------------

/// Mode product along `axis` (0-based): the result has n_axis replaced by
/// x.rows(), with entries
///     out(i_0,...,j,...,i_{p-1}) = sum_b a(i_0,...,b,...,i_{p-1}) * x(j, b).
inline Tensor mode_product(const Tensor& a, const Matrix& x, Index axis) {
    if (axis < 0 || axis >= a.order())
        throw ShapeError("mode product axis " + std::to_string(axis) + " out of range for order " +
                         std::to_string(a.order()));
    const Index n_axis = a.dim(axis);
    if (x.cols() != n_axis)
        throw ShapeError("mode product shape mismatch on axis " + std::to_string(axis) + ": matrix has " +
                         std::to_string(x.cols()) + " columns, axis has size " + std::to_string(n_axis));

    Shape out_shape = a.shape();
    out_shape[static_cast<std::size_t>(axis)] = x.rows();
    Tensor out(out_shape);

    Index inner = 1;
    for (Index k = 0; k < axis; ++k) inner *= a.dim(k);
    const Index outer = a.size() / (inner * n_axis);

    // Viewed as (inner, n_axis, outer), each outer block is a contiguous
    // column-major inner x n_axis matrix; the product contracts n_axis.
    const Matrix xt = x.transpose();
    for (Index o = 0; o < outer; ++o) {
        ConstMatrixMap in_block(a.data() + o * inner * n_axis, inner, n_axis);
        MatrixMap out_block(out.data() + o * inner * x.rows(), inner, x.rows());
        out_block.noalias() = in_block * xt;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Elementwise arithmetic and norms
// ---------------------------------------------------------------------------

namespace detail {
inline void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b))
        throw ShapeError(std::string(op) + ": shape mismatch " + shape_to_string(a.shape()) + " vs " +
                         shape_to_string(b.shape()));
}
} // namespace detail

inline Tensor add(const Tensor& a, const Tensor& b) {
    detail::require_same_shape(a, b, "add");
    Tensor out = a;
    for (Index i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

inline Tensor sub(const Tensor& a, const Tensor& b) {
    detail::require_same_shape(a, b, "sub");
    Tensor out = a;
    for (Index i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

inline Tensor scale(const Tensor& a, Complex c) {
    Tensor out = a;
    for (Index i = 0; i < out.size(); ++i) out[i] *= c;
    return out;
}

/// Elementwise complex conjugate.
inline Tensor conj(const Tensor& a) {
    Tensor out = a;
    for (Index i = 0; i < out.size(); ++i) out[i] = std::conj(out[i]);
    return out;
}

inline Tensor operator+(const Tensor& a, const Tensor& b) { return add(a, b); }
inline Tensor operator-(const Tensor& a, const Tensor& b) { return sub(a, b); }
inline Tensor operator*(Complex c, const Tensor& a) { return scale(a, c); }
inline Tensor operator*(const Tensor& a, Complex c) { return scale(a, c); }

inline double l1_norm(const Tensor& a) {
    double s = 0.0;
    for (Index i = 0; i < a.size(); ++i) s += std::abs(a[i]);
    return s;
}

inline double linf_norm(const Tensor& a) {
    double s = 0.0;
    for (Index i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i]));
    return s;
}

inline double frobenius(const Tensor& a) {
    double s = 0.0;
    for (Index i = 0; i < a.size(); ++i) s += std::norm(a[i]);
    return std::sqrt(s);
}

/// sum_e conj(y_e) * x_e, the inner product whose real part the envelope
/// machinery bounds.
inline Complex inner(const Tensor& y, const Tensor& x) {
    detail::require_same_shape(y, x, "inner");
    Complex s{0.0, 0.0};
    for (Index i = 0; i < y.size(); ++i) s += std::conj(y[i]) * x[i];
    return s;
}

/// Relative Frobenius distance, the residual measure used by tests and the
/// verification CLI: ||a - b||_F / max(||a||_F, ||b||_F), with 0/0 = 0.
inline double rel_error(const Tensor& a, const Tensor& b) {
    const double denom = std::max(frobenius(a), frobenius(b));
    if (denom == 0.0) return 0.0;
    return frobenius(sub(a, b)) / denom;
}

// ---------------------------------------------------------------------------
// Tubes
// ---------------------------------------------------------------------------

/// A 1 x 1 x n_2 x ... x n_{p-1} tensor: the scalar-like element of the
/// algebra. Wraps a Tensor and enforces the leading-1x1 invariant.
class Tube {
public:
    explicit Tube(Tensor t) : t_(std::move(t)) {
        if (t_.rows() != 1 || t_.cols() != 1)
            throw ShapeError("a tube must have leading dimensions 1x1, got " +
                             detail::shape_to_string(t_.shape()));
    }

    /// Zero tube over the given trailing shape.
    static Tube zeros(const Shape& trailing) {
        Shape s;
        s.reserve(trailing.size() + 2);
        s.push_back(1);
        s.push_back(1);
        s.insert(s.end(), trailing.begin(), trailing.end());
        return Tube(Tensor(std::move(s)));
    }

    const Tensor& tensor() const { return t_; }
    Index length() const { return t_.size(); }
    Complex value(Index i) const { return t_[i]; }
    Complex& value(Index i) { return t_[i]; }
    Shape trailing_shape() const { return t_.trailing_shape(); }

private:
    Tensor t_;
};

inline Tube tube_add(const Tube& a, const Tube& b) { return Tube(add(a.tensor(), b.tensor())); }
inline Tube tube_sub(const Tube& a, const Tube& b) { return Tube(sub(a.tensor(), b.tensor())); }

/// The (i, j, :, ..., :) tube of a tensor.
inline Tube tube_at(const Tensor& a, Index i, Index j) {
    if (i < 0 || i >= a.rows() || j < 0 || j >= a.cols())
        throw ShapeError("tube index (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of range for leading dims " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
    Shape s{1, 1};
    const Shape trailing = a.trailing_shape();
    s.insert(s.end(), trailing.begin(), trailing.end());
    Tensor t(s);
    const Index slices = a.slice_count();
    for (Index k = 0; k < slices; ++k) t[k] = slice_view(a, k)(i, j);
    return Tube(t);
}

} // namespace ltensor
