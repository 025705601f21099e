#include "doctest.h"
#include "test_support.hpp"

#include "ltensor/ltensor.hpp"
#include "ltensor/oracle.hpp"

using namespace ltensor;

TEST_SUITE("oracle") {

TEST_CASE("bcirc layout") {
    // n3 = 1: the block-circulant is the frontal slice itself
    const Tensor single = random_tensor(Shape{3, 2, 1}, 91);
    CHECK(support::naive_rel(oracle::bcirc(single), matrix_slice(single, 0)) == 0.0);

    // n3 = 2: [[S1, S2],[S2, S1]]
    const Tensor a = random_tensor(Shape{2, 3, 2}, 92);
    const Matrix s1 = matrix_slice(a, 0), s2 = matrix_slice(a, 1);
    const Matrix bc = oracle::bcirc(a);
    REQUIRE(bc.rows() == 4);
    REQUIRE(bc.cols() == 6);
    CHECK(support::naive_rel(bc.block(0, 0, 2, 3), s1) == 0.0);
    CHECK(support::naive_rel(bc.block(0, 3, 2, 3), s2) == 0.0);
    CHECK(support::naive_rel(bc.block(2, 0, 2, 3), s2) == 0.0);
    CHECK(support::naive_rel(bc.block(2, 3, 2, 3), s1) == 0.0);

    // first block column of bcirc equals mat_vec
    const Tensor b = random_tensor(Shape{2, 2, 4}, 93);
    const Matrix col = oracle::bcirc(b).block(0, 0, 8, 2);
    CHECK(support::naive_rel(col, oracle::mat_vec(b)) == 0.0);

    CHECK_THROWS_AS(oracle::bcirc(random_tensor(Shape{2, 2, 2, 2}, 1)), ShapeError);
}

TEST_CASE("mat_vec stacks frontal slices; fold undoes it") {
    const Tensor a = random_tensor(Shape{2, 3, 4}, 95);
    const Matrix m = oracle::mat_vec(a);
    for (Index k = 0; k < 4; ++k)
        CHECK(support::naive_rel(m.block(2 * k, 0, 2, 3), matrix_slice(a, k)) == 0.0);
    const Tensor back = oracle::fold(m, 2, 3, 4);
    CHECK(back.storage() == a.storage());
    CHECK_THROWS_AS(oracle::fold(m, 3, 3, 4), ShapeError);
}

TEST_CASE("classic product: identity, single-slice, and realness") {
    // classic identity tensor: first frontal slice I, others zero
    const Tensor a = random_tensor(Shape{2, 2, 3}, 97);
    Tensor eye(Shape{2, 2, 3});
    eye = set_matrix_slice(eye, 0, Matrix::Identity(2, 2));
    CHECK(support::naive_rel(oracle::t_product_classic(a, eye), a) <= 1e-14);

    // n3 = 1 reduces to the plain matrix product
    const Tensor x = random_tensor(Shape{2, 3, 1}, 98);
    const Tensor y = random_tensor(Shape{3, 2, 1}, 99);
    const Tensor xy = oracle::t_product_classic(x, y);
    CHECK(support::naive_rel(matrix_slice(xy, 0),
                             support::naive_matmul(matrix_slice(x, 0), matrix_slice(y, 0))) <= 1e-14);

    // real operands stay exactly real (the oracle never leaves real arithmetic)
    const Tensor ra = random_tensor(Shape{3, 2, 4}, 100, /*real=*/true);
    const Tensor rb = random_tensor(Shape{2, 3, 4}, 101, /*real=*/true);
    const Tensor rc = oracle::t_product_classic(ra, rb);
    for (Index i = 0; i < rc.size(); ++i) CHECK(rc[i].imag() == 0.0);
}

TEST_CASE("classic product agrees with the dft-domain product") {
    const Transform L = Transform::dft(Shape{4});
    for (bool real : {true, false}) {
        const Tensor a = random_tensor(Shape{3, 2, 4}, 103, real);
        const Tensor b = random_tensor(Shape{2, 3, 4}, 104, real);
        const Tensor classic = oracle::t_product_classic(a, b);
        const Tensor fast = t_product(a, b, L);
        CHECK(support::naive_rel(fast, classic) <= 1e-10);
    }
}

TEST_CASE("block diagonalization, third order") {
    const Tensor a = random_tensor(Shape{2, 2, 3}, 105);
    const auto rep = oracle::verify_block_diagonalization(a, oracle::Kind::third_order);
    CHECK(rep.off_block_max <= 1e-10);
    CHECK(rep.block_vs_slice_rel <= 1e-9);

    // n3 = 1: no off-diagonal blocks exist, mass is exactly zero
    const Tensor single = random_tensor(Shape{3, 3, 1}, 106);
    CHECK(oracle::verify_block_diagonalization(single, oracle::Kind::third_order).off_block_max ==
          0.0);
}

TEST_CASE("block diagonalization, higher order") {
    const Tensor a = random_tensor(Shape{2, 2, 2, 2}, 107);
    const auto rep = oracle::verify_block_diagonalization(a, oracle::Kind::p_order);
    CHECK(rep.off_block_max <= 1e-10);
    CHECK(rep.block_vs_slice_rel <= 1e-9);

    const Tensor b = random_tensor(Shape{2, 3, 2, 3, 2}, 108);
    const auto rep5 = oracle::verify_block_diagonalization(b, oracle::Kind::p_order);
    CHECK(rep5.off_block_max <= 1e-10);
    CHECK(rep5.block_vs_slice_rel <= 1e-9);
}

TEST_CASE("block diagonalization guard and shape checks") {
    CHECK_THROWS_AS(
        oracle::verify_block_diagonalization(Tensor(Shape{2, 2, 64, 64}), oracle::Kind::p_order),
        ShapeError);
    CHECK_THROWS_AS(
        oracle::verify_block_diagonalization(Tensor(Shape{2, 2, 2, 2}), oracle::Kind::third_order),
        ShapeError);
    CHECK_THROWS_AS(oracle::verify_block_diagonalization(Tensor(Shape{2, 2}), oracle::Kind::p_order),
                    ShapeError);
}

TEST_CASE("nested embedding reduces to bcirc at order 3") {
    const Tensor a = random_tensor(Shape{2, 3, 4}, 109);
    CHECK(support::naive_rel(oracle::detail::nested_bcirc(a), oracle::bcirc(a)) == 0.0);
}

} // TEST_SUITE
