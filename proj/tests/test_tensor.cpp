#include "doctest.h"
#include "test_support.hpp"

#include "ltensor/ltensor.hpp"

using namespace ltensor;

TEST_SUITE("tensor") {

TEST_CASE("flat layout is first-index-fastest") {
    Tensor a(Shape{2, 3, 4});
    for (Index f = 0; f < a.size(); ++f) a[f] = Complex(double(f), 0.0);
    // offset = i + 2j + 6k, checked against an independent stride computation
    const auto strides = support::strides_of(a.shape());
    REQUIRE(strides == std::vector<Index>({1, 2, 6}));
    CHECK(a(1, 2, 3).real() == doctest::Approx(1 + 2 * 2 + 6 * 3));
    CHECK(a(0, 1, 0).real() == doctest::Approx(2));
    const std::vector<Index> out_of_range{2, 0, 0};
    const std::vector<Index> wrong_order{0, 0};
    CHECK_THROWS_AS(a.at(out_of_range), ShapeError);
    CHECK_THROWS_AS(a.at(wrong_order), ShapeError);
}

TEST_CASE("construction validates shape") {
    CHECK_THROWS_AS(Tensor(Shape{3}), ShapeError);
    CHECK_THROWS_AS(Tensor(Shape{3, 0, 2}), ShapeError);
    CHECK_NOTHROW(Tensor(Shape{1, 1}));
}

TEST_CASE("slice index map round trip") {
    for (const Shape& trailing : {Shape{2, 2}, Shape{3, 1, 2}, Shape{5}}) {
        SliceIndexMap map(trailing);
        for (Index s = 0; s < map.total(); ++s) {
            const auto multi = map.to_multi(s);
            CHECK(map.to_flat(multi) == s);
        }
    }
}

TEST_CASE("slice index map runs the first trailing axis fastest") {
    // shape (2,2,2,2): flat slice 2 (0-based) is (i3,i4) = (0,1)
    SliceIndexMap map(Shape{2, 2});
    const auto multi = map.to_multi(2);
    CHECK(multi[0] == 0);
    CHECK(multi[1] == 1);
}

TEST_CASE("matrix_slice picks the addressed block") {
    Tensor a = random_tensor(Shape{2, 2, 2, 2}, 7);
    // flat slice 2 is A(:,:,0,1)
    const Matrix m = matrix_slice(a, 2);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) CHECK(m(i, j) == a(i, j, 0, 1));

    Tensor single = random_tensor(Shape{2, 2, 1, 1}, 8);
    const Matrix front = matrix_slice(single, 0);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) CHECK(front(i, j) == single(i, j, 0, 0));

    CHECK_THROWS_AS(matrix_slice(a, 4), ShapeError);
    CHECK_THROWS_AS(matrix_slice(a, -1), ShapeError);
}

TEST_CASE("slices partition the tensor") {
    const Tensor a = random_tensor(Shape{3, 2, 2, 2}, 9);
    Tensor rebuilt(a.shape());
    for (Index s = 0; s < a.slice_count(); ++s)
        rebuilt = set_matrix_slice(rebuilt, s, matrix_slice(a, s));
    CHECK(rebuilt.storage() == a.storage());
    CHECK_THROWS_AS(set_matrix_slice(a, 0, Matrix::Zero(2, 2)), ShapeError);
}

TEST_CASE("mode product with the identity matrix is exact") {
    const Tensor a = random_tensor(Shape{2, 3, 4}, 11);
    for (Index axis = 0; axis < a.order(); ++axis) {
        const Tensor same = mode_product(a, Matrix::Identity(a.dim(axis), a.dim(axis)), axis);
        CHECK(same.storage() == a.storage());
    }
}

TEST_CASE("mode product on a tube matches the hand computation") {
    // tube (1,2) under [[1,1],[1,-1]] along the last axis -> (3,-1)
    Tensor a(Shape{1, 1, 2});
    a[0] = 1.0;
    a[1] = 2.0;
    Matrix x(2, 2);
    x << 1.0, 1.0, 1.0, -1.0;
    const Tensor r = mode_product(a, x, 2);
    CHECK(std::abs(r[0] - Complex(3.0)) <= 1e-15);
    CHECK(std::abs(r[1] - Complex(-1.0)) <= 1e-15);
}

TEST_CASE("mode product agrees with explicit summation") {
    const Tensor a = random_tensor(Shape{2, 3, 2, 2}, 13);
    Rng rng(14);
    for (Index axis = 0; axis < a.order(); ++axis) {
        const Matrix x = gaussian_matrix(4, a.dim(axis), rng);
        const Tensor got = mode_product(a, x, axis);
        const Tensor want = support::naive_mode_product(a, x, axis);
        CHECK(support::naive_rel(got, want) <= 1e-13);
    }
}

TEST_CASE("mode products along distinct axes commute") {
    const Tensor a = random_tensor(Shape{3, 3, 3, 2, 2}, 15);
    Rng rng(16);
    const Matrix x = gaussian_matrix(3, 3, rng);
    const Matrix y = gaussian_matrix(2, 2, rng);
    const Tensor xy = mode_product(mode_product(a, x, 2), y, 4);
    const Tensor yx = mode_product(mode_product(a, y, 4), x, 2);
    CHECK(support::naive_rel(xy, yx) <= 1e-12);
}

TEST_CASE("mode product validates the contracted dimension") {
    const Tensor a = random_tensor(Shape{2, 3, 4}, 17);
    CHECK_THROWS_AS(mode_product(a, Matrix::Identity(3, 3), 2), ShapeError);
    CHECK_THROWS_AS(mode_product(a, Matrix::Identity(4, 4), 3), ShapeError);
}

TEST_CASE("elementwise arithmetic") {
    const Tensor a = random_tensor(Shape{2, 2, 3}, 19);
    const Tensor b = random_tensor(Shape{2, 2, 3}, 20);
    const Tensor s = add(a, b);
    const Tensor d = sub(a, b);
    const Tensor c2 = scale(a, Complex(0.0, 2.0));
    const Tensor cj = conj(a);
    for (Index i = 0; i < a.size(); ++i) {
        CHECK(s[i] == a[i] + b[i]);
        CHECK(d[i] == a[i] - b[i]);
        CHECK(c2[i] == a[i] * Complex(0.0, 2.0));
        CHECK(cj[i] == std::conj(a[i]));
    }
    CHECK_THROWS_AS(add(a, random_tensor(Shape{2, 2, 4}, 1)), ShapeError);
}

TEST_CASE("norms") {
    CHECK(l1_norm(Tensor(Shape{2, 2, 2})) == 0.0);

    Tensor ones(Shape{2, 2, 2});
    for (Index i = 0; i < ones.size(); ++i) ones[i] = 1.0;
    CHECK(linf_norm(ones) == 1.0);

    const Tensor a = random_tensor(Shape{3, 2, 2}, 21);
    double sq = 0.0;
    for (Index i = 0; i < a.size(); ++i) sq += std::norm(a[i]);
    CHECK(frobenius(a) == doctest::Approx(std::sqrt(sq)).epsilon(1e-13));
}

TEST_CASE("inner product conjugates the first argument") {
    Tensor y(Shape{1, 1, 2}), x(Shape{1, 1, 2});
    y[0] = Complex(0.0, 1.0);
    y[1] = 2.0;
    x[0] = Complex(3.0, 0.0);
    x[1] = Complex(0.0, 1.0);
    // conj(i)*3 + 2*i = -3i + 2i = -i
    const Complex v = inner(y, x);
    CHECK(std::abs(v - Complex(0.0, -1.0)) <= 1e-15);
}

TEST_CASE("rel_error handles the zero reference") {
    const Tensor z(Shape{2, 2, 2});
    CHECK(rel_error(z, z) == 0.0);
    const Tensor a = random_tensor(Shape{2, 2, 2}, 23);
    CHECK(rel_error(a, a) == 0.0);
    CHECK(rel_error(a, z) > 0.0);
}

TEST_CASE("tube type enforces 1x1 leading dims") {
    CHECK_THROWS_AS(Tube(Tensor(Shape{2, 1, 2})), ShapeError);
    Tube t = Tube::zeros(Shape{3});
    CHECK(t.length() == 3);
    t.value(1) = 5.0;
    CHECK(tube_add(t, t).value(1) == Complex(10.0));
    CHECK(tube_sub(t, t).value(1) == Complex(0.0));
}

TEST_CASE("tube_at extracts the (i,j) tube") {
    const Tensor a = random_tensor(Shape{3, 2, 4}, 25);
    const Tube t = tube_at(a, 2, 1);
    for (Index k = 0; k < 4; ++k) CHECK(t.value(k) == a(2, 1, k));
}

} // TEST_SUITE
