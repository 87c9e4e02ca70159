#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"
#include "ncgalois/algebras.hpp"
#include "support.hpp"

using namespace ncgalois;
using testing_support::fixture_group;
using testing_support::planted_algebra;
using testing_support::unit;

namespace {

ErrorCode algebra_error(Index n, const Matrix& cols) {
  try {
    StarAlgebra(n, Subspace(cols));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("span was accepted");
  return ErrorCode::InvalidInput;
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

}  // namespace

TEST_SUITE("algebras") {
  TEST_CASE("standard algebras") {
    CHECK(StarAlgebra::full(3).dim() == 9);
    CHECK(StarAlgebra::full(3).is_full());
    CHECK(StarAlgebra::scalars(3).dim() == 1);
    CHECK(StarAlgebra::diagonal(3).dim() == 3);
    CHECK(StarAlgebra::diagonal(3).contains(unit(3, 1, 1)));
    CHECK_FALSE(StarAlgebra::diagonal(3).contains(unit(3, 0, 1)));
    CHECK(std::abs(StarAlgebra::diagonal(3).residual(unit(3, 0, 1)) - 1.0) < 1e-12);
  }

  TEST_CASE("generated algebras") {
    CHECK(algebra_from_generators({}, 3).dim() == 1);
    CHECK(algebra_from_generators({unit(2, 0, 1)}, 2).dim() == 4);
    CHECK(algebra_from_generators({unit(3, 0, 0), unit(3, 1, 2)}, 3).dim() == 5);
    CHECK(algebra_from_generators({unit(3, 0, 0)}, 3).dim() == 2);
    CHECK_THROWS_AS(algebra_from_generators({unit(2, 0, 1)}, 3), Error);
  }

  TEST_CASE("invalid spans") {
    Matrix no_unit = vec(unit(2, 0, 1));
    CHECK(algebra_error(2, no_unit) == ErrorCode::NotAnAlgebra);
    Matrix not_star(4, 2);
    not_star.col(0) = vec(Matrix::Identity(2, 2)) / std::sqrt(2.0);
    not_star.col(1) = vec(unit(2, 0, 1));
    CHECK(algebra_error(2, not_star) == ErrorCode::NotAnAlgebra);
    Matrix not_closed(4, 3);
    not_closed.col(0) = vec(Matrix::Identity(2, 2)) / std::sqrt(2.0);
    not_closed.col(1) = vec(unit(2, 0, 1) + unit(2, 1, 0)) / std::sqrt(2.0);
    not_closed.col(2) = vec(Complex(0, 1) * (unit(2, 0, 1) - unit(2, 1, 0))) / std::sqrt(2.0);
    CHECK(algebra_error(2, not_closed) == ErrorCode::NotAnAlgebra);
    CHECK(algebra_error(3, no_unit) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("commutants and centers") {
    CHECK(commutant(StarAlgebra::scalars(3)).dim() == 9);
    CHECK(commutant(StarAlgebra::full(3)).dim() == 1);
    CHECK(commutant(StarAlgebra::diagonal(2)).dim() == 2);
    const StarAlgebra m = algebra_from_generators({unit(3, 0, 0), unit(3, 1, 2)}, 3);
    CHECK(center(m).dim() == 2);
    CHECK(commutant(m).dim() == 2);
    CHECK_FALSE(is_factor(m));
    CHECK(is_factor(StarAlgebra::full(4)));
    CHECK(relative_commutant(StarAlgebra::diagonal(3), StarAlgebra::full(3)).dim() == 3);
    CHECK_THROWS_AS(relative_commutant(StarAlgebra::full(3), StarAlgebra::diagonal(3)), Error);
  }

  TEST_CASE("intersection") {
    const StarAlgebra x = algebra_from_generators({unit(2, 0, 1) + unit(2, 1, 0)}, 2);
    CHECK(x.dim() == 2);
    CHECK(intersect(StarAlgebra::diagonal(2), x).dim() == 1);
    CHECK(intersect(StarAlgebra::diagonal(3), StarAlgebra::full(3)).equals(StarAlgebra::diagonal(3)));
  }

  TEST_CASE("block structure") {
    const StarAlgebra m = algebra_from_generators({unit(3, 0, 0), unit(3, 1, 2)}, 3);
    const BlockStructure b = block_structure(m);
    REQUIRE(b.blocks.size() == 2);
    CHECK(b.blocks[0].block_dim == 1);
    CHECK(b.blocks[0].multiplicity == 1);
    CHECK(b.blocks[1].block_dim == 2);
    CHECK(b.blocks[1].multiplicity == 1);
    CHECK(b.residual < 1e-9);
    CHECK(b.central_projections.size() == 2);

    // M_2 (x) 1_2 has one block of size 2 with multiplicity 2.
    std::vector<Matrix> gens;
    for (const auto& g : {unit(2, 0, 1), unit(2, 1, 1)}) gens.push_back(Eigen::kroneckerProduct(g, Matrix::Identity(2, 2)).eval());
    const StarAlgebra amp = algebra_from_generators(gens, 4);
    CHECK(amp.dim() == 4);
    const BlockStructure ba = block_structure(amp);
    REQUIRE(ba.blocks.size() == 1);
    CHECK(ba.blocks[0].block_dim == 2);
    CHECK(ba.blocks[0].multiplicity == 2);
    Rng rng(2);
    const Matrix x = amp.random_element(rng, false);
    const Matrix y = ba.unitary.adjoint() * x * ba.unitary;
    // Column a*m + j: copy j of basis vector a, so y = X (x) 1_2.
    for (Index a = 0; a < 2; ++a)
      for (Index c = 0; c < 2; ++c) {
        CHECK(std::abs(y(a * 2, c * 2) - y(a * 2 + 1, c * 2 + 1)) < 1e-9);
        CHECK(std::abs(y(a * 2, c * 2 + 1)) < 1e-9);
      }
  }

  TEST_CASE("planted algebras: dimension, blocks and bicommutant") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
      const auto p = planted_algebra(rng, 5);
      CAPTURE(trial);
      const StarAlgebra a = algebra_from_generators(p.generators, p.n);
      CHECK(a.dim() == p.expected_dim);
      CHECK(closure_residual(a) < 1e-9);
      CHECK(bicommutant_check(a));
      Index comm = 0;
      for (const auto& b : p.blocks) comm += b.multiplicity * b.multiplicity;
      const BlockStructure bs = block_structure(a);
      Index planted_sizes = 0, found_sizes = 0;
      for (const auto& b : p.blocks) planted_sizes += b.block_dim * b.multiplicity;
      for (const auto& b : bs.blocks) found_sizes += b.block_dim * b.multiplicity;
      CHECK(found_sizes == planted_sizes);
      CHECK(bs.blocks.size() == p.blocks.size());
      CHECK(commutant(a).dim() == comm);
      CHECK(bs.residual < 1e-8);
    }
  }

  TEST_CASE("projection is idempotent and self-adjoint") {
    const StarAlgebra m = algebra_from_generators({unit(3, 0, 0), unit(3, 1, 2)}, 3);
    Rng rng(5);
    const Matrix a = rng.gaussian(3, 3), b = rng.gaussian(3, 3);
    CHECK((m.project(m.project(a)) - m.project(a)).norm() < 1e-12);
    CHECK(std::abs((m.project(a).adjoint() * b).trace() - (a.adjoint() * m.project(b)).trace()) < 1e-12);
    CHECK(m.residual(m.random_element(rng, true)) < 1e-12);
    CHECK(is_hermitian(m.random_element(rng, true)));
  }

  TEST_CASE("fixed-point algebras") {
    const auto s3 = fixture_group("s3");
    const UnitaryRep perm = permutation_rep(s3, all_permutations(3));
    CHECK(fixed_point_algebra(StarAlgebra::full(3), perm, Subgroup::whole(s3)).dim() == 2);
    CHECK(fixed_point_algebra(StarAlgebra::full(3), perm, Subgroup::trivial(s3)).dim() == 9);
    // A transposition fixes one point: M_1 + M_2 in the commutant, commutant dim 5.
    CHECK(fixed_point_algebra(StarAlgebra::full(3), perm, Subgroup(s3, {0, 1})).dim() == 5);

    const auto z2 = fixture_group("z2");
    const Matrix swap = unit(2, 0, 1) + unit(2, 1, 0);
    const UnitaryRep flip(z2, {Matrix::Identity(2, 2), swap});
    CHECK(fixed_point_algebra(StarAlgebra::diagonal(2), flip, Subgroup::whole(z2)).dim() == 1);
    CHECK(preserves(StarAlgebra::diagonal(2), flip, Subgroup::whole(z2)));

    const UnitaryRep had(z2, {Matrix::Identity(2, 2), hadamard()});
    CHECK_FALSE(preserves(StarAlgebra::diagonal(2), had, Subgroup::whole(z2)));
    try {
      fixed_point_algebra(StarAlgebra::diagonal(2), had, Subgroup::whole(z2));
      FAIL("expected NotInvariantAlgebra");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotInvariantAlgebra);
    }
  }

  TEST_CASE("averaging") {
    const auto s3 = fixture_group("s3");
    const UnitaryRep perm = permutation_rep(s3, all_permutations(3));
    Rng rng(8);
    const Matrix a = rng.gaussian(3, 3);
    const Matrix invariant = Matrix::Identity(3, 3) / 3.0;
    const AveragingReport r = averaging_decomposition(a, perm, {invariant});
    CHECK(r.idempotence_residual < 1e-12);
    CHECK(r.state_residuals.at(0) < 1e-12);
    CHECK((r.fixed_part + r.remainder - a).norm() < 1e-12);
    for (const auto& m : perm.matrices()) CHECK((m * r.fixed_part - r.fixed_part * m).norm() < 1e-12);
    // Fixed part of e11 under S3 is I/3.
    CHECK((averaging_projection(unit(3, 0, 0), perm) - invariant).norm() < 1e-12);
    CHECK((average_over(unit(3, 0, 0), perm, {0}) - unit(3, 0, 0)).norm() == 0.0);
    CHECK_THROWS_AS(averaging_projection(Matrix::Identity(2, 2), perm), Error);
  }
}
