// Convex-envelope machinery for the multi-rank l1 objective over the
// spectral-norm unit ball, valid for unitary transforms only.
//
// With the global spectrum sigma_(1) >= sigma_(2) >= ... of L(Y), the
// conjugate of the objective over the unit ball has the closed form
//
//     conjugate(Y) = max_r ( sum_{i<=r} sigma_(i) - r )
//                  = sum over sigma_(i) > 1 of (sigma_(i) - 1),
//
// and the biconjugate is infinite outside the spectral unit ball and equals
// the nuclear norm inside it. lower_bound_check probes the defining
// supremum: for sampled X with ||X|| <= 1 the Fenchel-Young gap
// Re<Y,X> - objective(X) - conjugate(Y) must stay <= 0 (up to roundoff), and
// the structured maximizer sharing Y's singular tensors must attain it.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ltensor/decomposition.hpp"
#include "ltensor/error.hpp"
#include "ltensor/generate.hpp"
#include "ltensor/norms.hpp"
#include "ltensor/parallel.hpp"
#include "ltensor/product.hpp"
#include "ltensor/random.hpp"
#include "ltensor/tensor.hpp"
#include "ltensor/transforms.hpp"

namespace ltensor::envelope {

namespace detail {
inline void require_unitary(const Transform& L, const char* op) {
    if (!L.unitary())
        throw TransformError(std::string(op) + ": requires a unitary transform, got " + L.name());
}
} // namespace detail

/// The rank objective: l1 norm of the multi-rank vector.
inline Index objective(const Tensor& x, const Transform& L, double rel_tol = -1.0) {
    return multirank_l1(x, L, rel_tol);
}

struct ConjugateReport {
    double value = 0.0;       // conjugate of the objective at Y
    Index active_count = 0;   // number of global spectrum values above 1
    SingularSpectrum spectrum;
    bool unitary_transform = true;
};

inline ConjugateReport conjugate(const Tensor& y, const Transform& L) {
    detail::require_unitary(L, "conjugate");
    ConjugateReport rep;
    rep.spectrum = singular_spectrum(y, L);
    rep.unitary_transform = rep.spectrum.unitary_transform;
    double run = 0.0;
    for (const SpectrumEntry& e : rep.spectrum.global) {
        run += e.value - 1.0;
        rep.value = std::max(rep.value, run);
        if (e.value > 1.0) ++rep.active_count;
    }
    return rep;
}

/// Tagged value: `value` is meaningful only when is_infinite is false. The
/// marker never enters arithmetic as a floating-point infinity.
struct BiconjugateValue {
    bool is_infinite = false;
    double value = 0.0;
};

inline BiconjugateValue biconjugate(const Tensor& z, const Transform& L) {
    detail::require_unitary(L, "biconjugate");
    const SingularSpectrum spec = singular_spectrum(z, L);
    if (spectral_norm(spec) > 1.0) return {true, 0.0};
    return {false, nuclear_norm(spec)};
}

struct LowerBoundReport {
    double max_violation = 0.0; // max over samples of Re<Y,X> - objective(X) - conjugate(Y)
    double maximizer_gap = 0.0; // |attained - conjugate(Y)| for the structured maximizer
    Index samples = 0;          // number of random samples drawn (maximizer excluded)
};

/// Monte-Carlo probe of the conjugate's defining supremum. Draws `samples`
/// random X with ||X|| <= 1 (per-slice unitary factors, singular values in
/// [0.05, 1] on a random rank pattern) plus the structured maximizer built
/// from Y's own singular tensors with singular values 1 exactly where Y's
/// global spectrum exceeds 1.
inline LowerBoundReport lower_bound_check(const Tensor& y, const Transform& L, Index samples,
                                          std::uint64_t seed) {
    detail::require_unitary(L, "lower_bound_check");
    if (samples < 1) throw Error("lower_bound_check: need at least 1 sample");

    const ConjugateReport rep = conjugate(y, L);
    LowerBoundReport out;
    out.samples = samples;

    // Objective values below come from the rank patterns each X is built
    // with, not from a numerical recount: resynthesis dust in rank-zero
    // slices would otherwise shift the count by whole integers.
    const TsvdFactors f = tsvd(y, L);
    Tensor dhat(f.s.shape());
    for (const SpectrumEntry& e : rep.spectrum.global)
        if (e.value > 1.0)
            slice_view(dhat, e.slice)(e.index_in_slice, e.index_in_slice) = Complex{1.0, 0.0};
    const Tensor xstar =
        t_product(f.u, t_product(L.inverse(dhat), conj_transpose(f.v, L), L), L);
    const double attained =
        inner(y, xstar).real() - static_cast<double>(rep.active_count);
    out.maximizer_gap = std::abs(attained - rep.value);
    out.max_violation = attained - rep.value;

    const Index k = std::min(y.rows(), y.cols());
    std::vector<double> violations(static_cast<std::size_t>(samples));
    ltensor::detail::parallel_for(samples, [&](Index i) {
        const std::uint64_t sample_seed = derive_seed(seed, static_cast<std::uint64_t>(i) + 1);
        Rng rng(sample_seed);
        std::vector<Index> ranks(static_cast<std::size_t>(y.slice_count()));
        Index pattern_l1 = 0;
        for (Index& r : ranks) {
            r = std::min<Index>(k, static_cast<Index>(rng.uniform() * static_cast<double>(k + 1)));
            pattern_l1 += r;
        }
        const Tensor x = random_multirank_tensor(y.shape(), ranks, L, derive_seed(sample_seed, 9001),
                                                 0.05, 1.0);
        violations[static_cast<std::size_t>(i)] =
            inner(y, x).real() - static_cast<double>(pattern_l1) - rep.value;
    });
    for (double v : violations) out.max_violation = std::max(out.max_violation, v);
    return out;
}

} // namespace ltensor::envelope
