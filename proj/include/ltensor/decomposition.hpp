// Slicewise SVD machinery: the tensor SVD under a transform, truncation,
// singular spectra, and the rank notions built on them.
//
// tsvd factors A = U * S * V^H (products under L) by taking a full matrix SVD
// of every transform-domain slice and mapping the stacked factors back
// through L^{-1}. S is slice-diagonal in the transform domain with
// nonnegative, descending diagonals; U and V are unitary tensors.
//
// singular_spectrum is the shared computation path for everything rank- and
// norm-shaped: it records each slice's descending singular values plus one
// globally sorted list tagged with (slice, position). multi_rank, tubal_rank,
// and the norms module all read from it, so identities between those
// quantities hold exactly, not just to rounding.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "ltensor/error.hpp"
#include "ltensor/parallel.hpp"
#include "ltensor/product.hpp"
#include "ltensor/tensor.hpp"
#include "ltensor/transforms.hpp"

namespace ltensor {

struct TsvdFactors {
    Tensor u; // (n1, n1, trailing)
    Tensor s; // (n1, n2, trailing)
    Tensor v; // (n2, n2, trailing)
    Transform transform;
};

/// Full slicewise SVD in the transform domain. Throws NumericError naming the
/// slice if a slice SVD fails to converge.
inline TsvdFactors tsvd(const Tensor& a, const Transform& L) {
    L.check_matches(a);
    const Index n1 = a.rows(), n2 = a.cols();
    const Tensor ahat = L.forward(a);

    Shape u_shape{n1, n1}, s_shape{n1, n2}, v_shape{n2, n2};
    const Shape trailing = a.trailing_shape();
    for (Shape* sh : {&u_shape, &s_shape, &v_shape})
        sh->insert(sh->end(), trailing.begin(), trailing.end());
    Tensor uhat(u_shape), shat(s_shape), vhat(v_shape);

    detail::parallel_for(ahat.slice_count(), [&](Index i) {
        Eigen::JacobiSVD<Matrix> svd(matrix_slice(ahat, i),
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (svd.info() != Eigen::Success)
            throw NumericError("tsvd: SVD did not converge on transform-domain slice " +
                               std::to_string(i));
        slice_view(uhat, i) = svd.matrixU();
        slice_view(vhat, i) = svd.matrixV();
        auto s = slice_view(shat, i);
        s.setZero();
        const Index k = std::min(n1, n2);
        for (Index j = 0; j < k; ++j) s(j, j) = Complex{svd.singularValues()(j), 0.0};
    });

    return TsvdFactors{L.inverse(uhat), L.inverse(shat), L.inverse(vhat), L};
}

/// Keeps the leading ranks[i] singular values of transform-domain slice i and
/// reassembles. ranks must have one entry per slice, each in [0, min(n1,n2)].
inline Tensor truncate(const TsvdFactors& f, const std::vector<Index>& ranks) {
    const Index n1 = f.u.rows(), n2 = f.v.rows();
    const Index k = std::min(n1, n2);
    const Tensor uhat = f.transform.forward(f.u);
    const Tensor shat = f.transform.forward(f.s);
    const Tensor vhat = f.transform.forward(f.v);
    if (static_cast<Index>(ranks.size()) != shat.slice_count())
        throw ShapeError("truncate: got " + std::to_string(ranks.size()) + " ranks for " +
                         std::to_string(shat.slice_count()) + " slices");
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (ranks[i] < 0 || ranks[i] > k)
            throw ShapeError("truncate: rank " + std::to_string(ranks[i]) + " for slice " +
                             std::to_string(i) + " outside [0," + std::to_string(k) + "]");

    Tensor out_hat(f.s.shape());
    detail::parallel_for(shat.slice_count(), [&](Index i) {
        Matrix s = matrix_slice(shat, i);
        for (Index j = ranks[static_cast<std::size_t>(i)]; j < k; ++j) s(j, j) = Complex{0.0, 0.0};
        slice_view(out_hat, i).noalias() =
            slice_view(uhat, i) * s * slice_view(vhat, i).adjoint();
    });
    return f.transform.inverse(out_hat);
}

/// Same rank for every slice.
inline Tensor truncate(const TsvdFactors& f, Index rank) {
    const Index slices = f.s.slice_count();
    return truncate(f, std::vector<Index>(static_cast<std::size_t>(slices), rank));
}

struct SpectrumEntry {
    double value;
    Index slice;          // flat slice index the value came from
    Index index_in_slice; // its position in that slice's descending list
};

struct SingularSpectrum {
    std::vector<std::vector<double>> per_slice; // descending, length min(n1,n2) each
    std::vector<SpectrumEntry> global;          // all values, sorted descending
    bool unitary_transform = false;             // whether the transform was unitary
};

/// Singular values of every transform-domain slice, individually and globally
/// sorted. Ties in the global order break by (slice, position) so the result
/// is deterministic.
inline SingularSpectrum singular_spectrum(const Tensor& a, const Transform& L) {
    L.check_matches(a);
    const Tensor ahat = L.forward(a);
    const Index slices = ahat.slice_count();

    SingularSpectrum spec;
    spec.unitary_transform = L.unitary();
    spec.per_slice.resize(static_cast<std::size_t>(slices));
    detail::parallel_for(slices, [&](Index i) {
        Eigen::JacobiSVD<Matrix> svd(matrix_slice(ahat, i));
        if (svd.info() != Eigen::Success)
            throw NumericError("singular_spectrum: SVD did not converge on transform-domain slice " +
                               std::to_string(i));
        const auto& vals = svd.singularValues();
        auto& dst = spec.per_slice[static_cast<std::size_t>(i)];
        dst.assign(vals.data(), vals.data() + vals.size());
    });

    for (Index i = 0; i < slices; ++i)
        for (std::size_t j = 0; j < spec.per_slice[static_cast<std::size_t>(i)].size(); ++j)
            spec.global.push_back(
                {spec.per_slice[static_cast<std::size_t>(i)][j], i, static_cast<Index>(j)});
    std::sort(spec.global.begin(), spec.global.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
        return std::tie(y.value, x.slice, x.index_in_slice) < std::tie(x.value, y.slice, y.index_in_slice);
    });
    return spec;
}

struct MultiRank {
    std::vector<Index> ranks; // numeric rank of each transform-domain slice
    Index l1 = 0;             // sum of entries
    double l2 = 0.0;          // Euclidean norm of the vector
};

inline double default_rank_tol(Index n1, Index n2) {
    return static_cast<double>(std::max(n1, n2)) * std::numeric_limits<double>::epsilon();
}

/// Numeric ranks from an existing spectrum. A value counts toward slice i's
/// rank when it exceeds rel_tol times that slice's largest value; slices whose
/// largest value is below the 1e-300 floor have rank 0.
inline MultiRank multi_rank(const SingularSpectrum& spec, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw Error("rank tolerance must lie in (0,1), got " + std::to_string(rel_tol));
    MultiRank mr;
    mr.ranks.reserve(spec.per_slice.size());
    for (const auto& vals : spec.per_slice) {
        Index r = 0;
        if (!vals.empty() && vals[0] > 1e-300) {
            const double cut = rel_tol * vals[0];
            while (r < static_cast<Index>(vals.size()) && vals[static_cast<std::size_t>(r)] > cut) ++r;
        }
        mr.ranks.push_back(r);
    }
    double sq = 0.0;
    for (Index r : mr.ranks) {
        mr.l1 += r;
        sq += static_cast<double>(r) * static_cast<double>(r);
    }
    mr.l2 = std::sqrt(sq);
    return mr;
}

/// rel_tol <= 0 selects the default max(n1, n2) * machine epsilon.
inline MultiRank multi_rank(const Tensor& a, const Transform& L, double rel_tol = -1.0) {
    if (rel_tol <= 0.0) rel_tol = default_rank_tol(a.rows(), a.cols());
    return multi_rank(singular_spectrum(a, L), rel_tol);
}

/// Number of nonzero diagonal tubes of S, which equals the largest entry of
/// the multi-rank vector.
inline Index tubal_rank(const Tensor& a, const Transform& L, double rel_tol = -1.0) {
    const MultiRank mr = multi_rank(a, L, rel_tol);
    Index best = 0;
    for (Index r : mr.ranks) best = std::max(best, r);
    return best;
}

} // namespace ltensor
