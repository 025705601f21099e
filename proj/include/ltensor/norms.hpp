// Nuclear and spectral norms in the transform domain, plus the multi-rank
// vector norms. All of them are views of SingularSpectrum: the nuclear norm
// is the sum of the global list and the spectral norm is its head, so
// "nuclear = spectrum sum" and "spectral = largest value" are identities of
// the code path, not approximations. Overloads taking a precomputed spectrum
// exist so callers combining several of these quantities evaluate one SVD
// sweep, and so the identities stay exact between them.
//
// The norms are well-defined for any invertible transform; the unitary flag
// carried by the spectrum tells envelope-style consumers whether the
// convexity guarantees apply.
#pragma once

#include <cmath>

#include "ltensor/decomposition.hpp"
#include "ltensor/tensor.hpp"
#include "ltensor/transforms.hpp"

namespace ltensor {

/// Sum over slices of matrix nuclear norms = sum of the global spectrum.
inline double nuclear_norm(const SingularSpectrum& spec) {
    double s = 0.0;
    for (const SpectrumEntry& e : spec.global) s += e.value;
    return s;
}

inline double nuclear_norm(const Tensor& a, const Transform& L) {
    return nuclear_norm(singular_spectrum(a, L));
}

/// Largest slice singular value; equals the spectral norm of the block
/// diagonal matrix of transform-domain slices.
inline double spectral_norm(const SingularSpectrum& spec) {
    return spec.global.empty() ? 0.0 : spec.global.front().value;
}

inline double spectral_norm(const Tensor& a, const Transform& L) {
    return spectral_norm(singular_spectrum(a, L));
}

inline Index multirank_l1(const Tensor& a, const Transform& L, double rel_tol = -1.0) {
    return multi_rank(a, L, rel_tol).l1;
}

inline double multirank_l2(const Tensor& a, const Transform& L, double rel_tol = -1.0) {
    return multi_rank(a, L, rel_tol).l2;
}

} // namespace ltensor
