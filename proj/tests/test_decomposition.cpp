#include <Eigen/SVD>
#include <algorithm>

#include "doctest.h"
#include "test_support.hpp"

#include "ltensor/ltensor.hpp"

using namespace ltensor;

namespace {

// Library-independent check of the factor invariants.
void check_factor_invariants(const Tensor& a, const TsvdFactors& f, const Transform& L) {
    CHECK(is_unitary_tensor(f.u, L, 1e-9));
    CHECK(is_unitary_tensor(f.v, L, 1e-9));
    const Tensor recon = t_product(f.u, t_product(f.s, conj_transpose(f.v, L), L), L);
    CHECK(rel_error(recon, a) <= 1e-9);

    const Tensor shat = L.forward(f.s);
    for (Index s = 0; s < shat.slice_count(); ++s) {
        const Matrix m = matrix_slice(shat, s);
        double prev = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j) {
                if (i != j) {
                    CHECK(std::abs(m(i, j)) <= 1e-12);
                    continue;
                }
                CHECK(std::abs(m(i, i).imag()) <= 1e-12);
                CHECK(m(i, i).real() >= -1e-12);
                CHECK(m(i, i).real() <= prev + 1e-12);
                prev = m(i, i).real();
            }
    }
}

} // namespace

TEST_SUITE("decomposition") {

TEST_CASE("tsvd of the identity tensor") {
    const Transform L = Transform::dct(Shape{2, 2});
    const Tensor eye = identity_tensor(3, L);
    const TsvdFactors f = tsvd(eye, L);
    const Tensor shat = L.forward(f.s);
    for (Index s = 0; s < shat.slice_count(); ++s)
        CHECK((matrix_slice(shat, s) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-11);
    check_factor_invariants(eye, f, L);
}

TEST_CASE("tsvd of the zero tensor") {
    const Transform L = Transform::dft_unitary(Shape{3});
    const Tensor zero(Shape{2, 3, 3});
    const TsvdFactors f = tsvd(zero, L);
    CHECK(l1_norm(f.s) == 0.0);
    CHECK(is_unitary_tensor(f.u, L, 1e-9));
    CHECK(is_unitary_tensor(f.v, L, 1e-9));
}

TEST_CASE("tsvd reconstructs random tensors under every transform") {
    const Tensor a = random_tensor(Shape{4, 3, 3, 2}, 111);
    for (const Transform& L : support::all_transforms(Shape{3, 2}, 112)) {
        CAPTURE(L.name());
        check_factor_invariants(a, tsvd(a, L), L);
    }
    // rectangular the other way
    const Tensor b = random_tensor(Shape{2, 4, 3, 2}, 113);
    const Transform L = Transform::dct(Shape{3, 2});
    const TsvdFactors f = tsvd(b, L);
    CHECK(rel_error(t_product(f.u, t_product(f.s, conj_transpose(f.v, L), L), L), b) <= 1e-10);
}

TEST_CASE("truncate at full rank reconstructs, at rank zero annihilates") {
    const Tensor a = random_tensor(Shape{3, 3, 2, 2}, 115);
    const Transform L = Transform::dft(Shape{2, 2});
    const TsvdFactors f = tsvd(a, L);
    CHECK(rel_error(truncate(f, 3), a) <= 1e-10);
    CHECK(l1_norm(truncate(f, 0)) == 0.0);
    CHECK_THROWS_AS(truncate(f, 4), ShapeError);
    CHECK_THROWS_AS(truncate(f, -1), ShapeError);
    CHECK_THROWS_AS(truncate(f, std::vector<Index>{1, 2}), ShapeError);
}

TEST_CASE("truncation error equals the discarded spectrum for unitary transforms") {
    const Tensor a = random_tensor(Shape{4, 3, 3}, 117);
    for (const Transform& L :
         {Transform::dft_unitary(Shape{3}), Transform::dct(Shape{3})}) {
        CAPTURE(L.name());
        const TsvdFactors f = tsvd(a, L);
        const SingularSpectrum spec = singular_spectrum(a, L);
        const std::vector<Index> ranks{1, 2, 0};
        const Tensor ar = truncate(f, ranks);
        double discarded = 0.0;
        for (Index s = 0; s < 3; ++s)
            for (std::size_t j = static_cast<std::size_t>(ranks[static_cast<std::size_t>(s)]);
                 j < spec.per_slice[static_cast<std::size_t>(s)].size(); ++j)
                discarded += spec.per_slice[static_cast<std::size_t>(s)][j] *
                             spec.per_slice[static_cast<std::size_t>(s)][j];
        const double err2 = std::pow(frobenius(sub(a, ar)), 2);
        CHECK(err2 == doctest::Approx(discarded).epsilon(1e-9));
    }
}

TEST_CASE("singular spectrum bookkeeping") {
    const Transform L = Transform::dft_unitary(Shape{2});
    const Tensor eye = identity_tensor(3, L);
    const SingularSpectrum spec = singular_spectrum(eye, L);
    REQUIRE(spec.global.size() == 6);
    for (const auto& e : spec.global) CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spec.unitary_transform);

    // single-slice diag(3,1)
    Tensor d(Shape{2, 2, 1});
    d = set_matrix_slice(d, 0, (Matrix(2, 2) << 3.0, 0.0, 0.0, 1.0).finished());
    const SingularSpectrum ds = singular_spectrum(d, Transform::identity(Shape{1}));
    REQUIRE(ds.global.size() == 2);
    CHECK(ds.global[0].value == doctest::Approx(3.0));
    CHECK(ds.global[1].value == doctest::Approx(1.0));
    CHECK(ds.global[0].slice == 0);
    CHECK(ds.global[0].index_in_slice == 0);
    CHECK(ds.global[1].index_in_slice == 1);
}

TEST_CASE("global spectrum is the sorted union of the per-slice values") {
    const Tensor a = random_tensor(Shape{3, 4, 2, 2}, 119);
    const Transform L = Transform::dct(Shape{2, 2});
    const SingularSpectrum spec = singular_spectrum(a, L);

    std::vector<double> flattened;
    for (const auto& sv : spec.per_slice) {
        CHECK(std::is_sorted(sv.rbegin(), sv.rend()));
        flattened.insert(flattened.end(), sv.begin(), sv.end());
    }
    std::sort(flattened.rbegin(), flattened.rend());
    REQUIRE(spec.global.size() == flattened.size());
    for (std::size_t i = 0; i < flattened.size(); ++i) {
        CHECK(spec.global[i].value == flattened[i]);
        // tags point back at the value they came from
        const auto& e = spec.global[i];
        CHECK(spec.per_slice[static_cast<std::size_t>(e.slice)]
                            [static_cast<std::size_t>(e.index_in_slice)] == e.value);
    }

    // energy identity: sum of squared singular values is the transform-domain
    // Frobenius mass
    double sum2 = 0.0;
    for (const auto& e : spec.global) sum2 += e.value * e.value;
    const double want = std::pow(frobenius(L.forward(a)), 2);
    CHECK(sum2 == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("spectrum values match independent per-slice SVDs") {
    const Tensor a = random_tensor(Shape{3, 2, 4}, 121);
    const Transform L = Transform::dft(Shape{4});
    const SingularSpectrum spec = singular_spectrum(a, L);
    const Tensor ahat = L.forward(a);
    for (Index s = 0; s < 4; ++s) {
        Eigen::JacobiSVD<Matrix> svd(matrix_slice(ahat, s));
        for (Index j = 0; j < svd.singularValues().size(); ++j)
            CHECK(spec.per_slice[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)] ==
                  doctest::Approx(svd.singularValues()(j)).epsilon(1e-12));
    }
}

TEST_CASE("multi rank") {
    const Transform L = Transform::dft(Shape{2, 2});
    CHECK(multi_rank(Tensor(Shape{3, 3, 2, 2}), L).ranks == std::vector<Index>{0, 0, 0, 0});

    const MultiRank mr = multi_rank(identity_tensor(3, L), L);
    CHECK(mr.ranks == std::vector<Index>{3, 3, 3, 3});
    CHECK(mr.l1 == 12);
    CHECK(mr.l2 == doctest::Approx(6.0)); // sqrt(4*9)

    const Tensor a = random_tensor(Shape{4, 4, 2, 2}, 123);
    const Tensor a2 = truncate(tsvd(a, L), 2);
    for (Index r : multi_rank(a2, L).ranks) CHECK(r <= 2);

    CHECK_THROWS_AS(multi_rank(a, L, 1.5), Error);
    CHECK_THROWS_AS(multi_rank(singular_spectrum(a, L), 0.0), Error);
    // rel_tol <= 0 on the tensor overload selects the default cut instead
    CHECK(multi_rank(a, L, 0.0).ranks == multi_rank(a, L).ranks);
}

TEST_CASE("generated tensors hit their prescribed multi rank") {
    const Shape shape{4, 3, 2, 2};
    const std::vector<Index> ranks{2, 1, 3, 1};
    for (const Transform& L : {Transform::identity(Shape{2, 2}), Transform::dct(Shape{2, 2}),
                               Transform::dft_unitary(Shape{2, 2})}) {
        CAPTURE(L.name());
        const Tensor a = random_multirank_tensor(shape, ranks, L, 125);
        CHECK(multi_rank(a, L).ranks == ranks);
    }
    // rank 0 slices are exact only when no transform round trip smears them
    const Transform id = Transform::identity(Shape{2, 2});
    const std::vector<Index> with_zero{2, 0, 3, 0};
    CHECK(multi_rank(random_multirank_tensor(shape, with_zero, id, 126), id).ranks == with_zero);
    // ill-conditioned transforms need a looser threshold than the default
    const Transform rnd = Transform::random_invertible(Shape{2, 2}, 127);
    const Tensor b = random_multirank_tensor(shape, ranks, rnd, 128);
    CHECK(multi_rank(b, rnd, 1e-9).ranks == ranks);
}

TEST_CASE("multi rank is invariant under unitary products") {
    const Transform L = Transform::dct(Shape{3});
    const Tensor a = random_multirank_tensor(Shape{3, 3, 3}, std::vector<Index>{1, 2, 3}, L, 129);
    const Tensor q1 = random_unitary_tensor(3, L, 130);
    const Tensor q2 = random_unitary_tensor(3, L, 131);
    const Tensor rotated = t_product(q1, t_product(a, q2, L), L);
    CHECK(multi_rank(rotated, L).ranks == multi_rank(a, L).ranks);
}

TEST_CASE("tubal rank") {
    const Transform L3 = Transform::dft(Shape{4});
    CHECK(tubal_rank(Tensor(Shape{2, 2, 4}), L3) == 0);
    CHECK(tubal_rank(identity_tensor(3, L3), L3) == 3);

    const Transform id = Transform::identity(Shape{3});
    const Tensor a = random_multirank_tensor(Shape{3, 3, 3}, std::vector<Index>{2, 1, 0}, id, 133);
    CHECK(tubal_rank(a, id) == 2);

    const Tensor r = random_tensor(Shape{3, 2, 2, 2}, 134);
    const Transform L = Transform::dct(Shape{2, 2});
    const MultiRank mr = multi_rank(r, L);
    CHECK(tubal_rank(r, L) == *std::max_element(mr.ranks.begin(), mr.ranks.end()));
}

TEST_CASE("generator validates its arguments") {
    const Transform L = Transform::dct(Shape{2});
    CHECK_THROWS_AS(random_multirank_tensor(Shape{3, 3, 2}, std::vector<Index>{1}, L, 1),
                    ShapeError);
    CHECK_THROWS_AS(random_multirank_tensor(Shape{3, 3, 2}, std::vector<Index>{4, 1}, L, 1),
                    ShapeError);
    CHECK_THROWS_AS(random_multirank_tensor(Shape{3, 3, 2}, 1, L, 1, /*smin=*/0.0, /*smax=*/1.0),
                    Error);
}

} // TEST_SUITE
