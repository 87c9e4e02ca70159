#include "doctest.h"
#include "ncgalois/crossed.hpp"
#include "support.hpp"

using namespace ncgalois;
using testing_support::fixture_group;
using testing_support::unit;

namespace {

Matrix swap2() { return unit(2, 0, 1) + unit(2, 1, 0); }

Matrix phase2() {
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = -1.0;
  return z;
}

UnitaryRep z2_rep(const Matrix& v) { return UnitaryRep(fixture_group("z2"), {Matrix::Identity(v.rows(), v.cols()), v}); }

}  // namespace

TEST_SUITE("crossed") {
  TEST_CASE("trivial group gives the base back") {
    const GroupPtr one = cyclic_group(1);
    const CrossedProduct cp = crossed_product(StarAlgebra::full(2), trivial_rep(one, 2));
    CHECK(cp.carrier_dim == 2);
    CHECK(cp.algebra.dim() == 4);
    CHECK(cp.covariance_residual == 0.0);
  }

  TEST_CASE("scalars by Z2 give the group algebra") {
    const CrossedProduct cp = crossed_product(StarAlgebra::scalars(2), z2_rep(swap2()));
    CHECK(cp.carrier_dim == 4);
    CHECK(cp.algebra.dim() == 2);
    CHECK(center(cp.algebra).dim() == 2);
  }

  TEST_CASE("diagonal base with the swap is a factor") {
    const CrossedProduct cp = crossed_product(StarAlgebra::diagonal(2), z2_rep(swap2()));
    CHECK(cp.algebra.dim() == 4);
    CHECK(cp.covariance_residual < 1e-12);
    CHECK(covariance_check(cp) < 1e-12);
    CHECK(is_factor(cp.algebra));
    const BlockStructure b = block_structure(cp.algebra);
    REQUIRE(b.blocks.size() == 1);
    CHECK(b.blocks[0].block_dim == 2);
    CHECK(b.blocks[0].multiplicity == 2);
    CHECK(cp.bicommutant_ok);
  }

  TEST_CASE("a corrupted implementing unitary breaks covariance") {
    CrossedProduct cp = crossed_product(StarAlgebra::diagonal(2), z2_rep(swap2()));
    cp.u = trivial_rep(cp.group, cp.carrier_dim);
    CHECK(covariance_check(cp) >= 0.1);
  }

  TEST_CASE("covariant representation") {
    const CrossedProduct cp = crossed_product(StarAlgebra::full(2), z2_rep(phase2()));
    Rng rng(3);
    const Matrix a = rng.gaussian(2, 2), b = rng.gaussian(2, 2);
    CHECK((cp.pi_alpha(a * b) - cp.pi_alpha(a) * cp.pi_alpha(b)).norm() < 1e-12);
    CHECK((cp.pi_alpha(a.adjoint()) - cp.pi_alpha(a).adjoint()).norm() < 1e-12);
    CHECK((cp.act(1, a) - phase2() * a * phase2()).norm() < 1e-12);
    // Slot h holds alpha^{h^-1}(a).
    CHECK((cp.pi_alpha(a).block(2, 2, 2, 2) - phase2() * a * phase2()).norm() < 1e-12);
    CHECK((cp.pi_alpha(a).block(0, 0, 2, 2) - a).norm() < 1e-12);
    CHECK(cp.covariance_residual < 1e-10);
  }

  TEST_CASE("full matrix algebras give dimension n^2 |G|") {
    const GroupPtr s3 = fixture_group("s3");
    for (const UnitaryRep& v : {regular_rep(fixture_group("z2")), regular_rep(fixture_group("z4")),
                                permutation_rep(s3, all_permutations(3))}) {
      const Index n = v.dim();
      const CrossedProduct cp = crossed_product(StarAlgebra::full(n), v);
      CHECK(cp.algebra.dim() == n * n * v.group()->order());
      CHECK(cp.covariance_residual < 1e-10);
    }
    const CrossedProduct m2 = crossed_product(StarAlgebra::full(2), z2_rep(phase2()));
    CHECK(m2.algebra.dim() == 8);
  }

  TEST_CASE("tables and implementing unitaries agree") {
    const StarAlgebra base = StarAlgebra::diagonal(2);
    const CrossedProduct by_ad = crossed_product(base, z2_rep(swap2()));
    const CrossedProduct by_table =
        crossed_product(base, fixture_group("z2"), {Matrix::Identity(2, 2), ad_table(base, swap2())});
    CHECK(by_ad.algebra.equals(by_table.algebra));
    CHECK_FALSE(by_table.implementing.has_value());
    CHECK(by_ad.implementing.has_value());
    CHECK(by_table.covariance_residual < 1e-12);
  }

  TEST_CASE("invalid actions") {
    const StarAlgebra base = StarAlgebra::diagonal(2);
    const GroupPtr z2 = fixture_group("z2");
    auto code = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::InvalidInput;
    };
    Matrix had(2, 2);
    had << 1, 1, 1, -1;
    had /= std::sqrt(2.0);
    CHECK(code([&] { crossed_product(base, z2_rep(had)); }) == ErrorCode::NotInvariantAlgebra);
    CHECK(code([&] { crossed_product(base, z2, {Matrix::Identity(2, 2), Matrix(2.0 * Matrix::Identity(2, 2))}); }) ==
          ErrorCode::NotInvariantAlgebra);
    CHECK(code([&] { crossed_product(base, z2, {phase2(), phase2()}); }) == ErrorCode::NotInvariantAlgebra);
    CHECK(code([&] { crossed_product(base, z2, {Matrix::Identity(2, 2)}); }) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("Galois correspondence over the crossed product") {
    const CrossedProduct cp = crossed_product(StarAlgebra::full(2), z2_rep(phase2()));
    const CrossedGaloisReport r = crossed_galois(cp);
    REQUIRE(r.galois.rows.size() == 2);
    CHECK(r.galois.rows[0].fixed_dim == 8);
    CHECK(r.galois.rows[1].fixed_dim == 4);
    CHECK(r.galois.injective);
    REQUIRE(r.pullback_ids.size() == 2);
    CHECK(r.pullbacks[r.pullback_ids[0]].dim() == 4);
    CHECK(r.pullbacks[r.pullback_ids[1]].dim() == 2);
    CHECK(r.pullback_injective);
  }
}
