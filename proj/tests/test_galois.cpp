#include <set>

#include "doctest.h"
#include "ncgalois/galois.hpp"
#include "support.hpp"

using namespace ncgalois;
using testing_support::fixture_group;

namespace {

// dim of the commutant of a permutation representation restricted to H: orbits of H on index pairs.
Index pair_orbits(const Subgroup& h, const std::vector<Permutation>& perms) {
  const int n = static_cast<int>(perms[0].size());
  std::set<std::set<std::pair<int, int>>> orbits;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::set<std::pair<int, int>> orbit;
      for (int g : h.members()) orbit.insert({perms[g][i], perms[g][j]});
      orbits.insert(orbit);
    }
  return static_cast<Index>(orbits.size());
}

UnitaryRep diagonal_rep(const GroupPtr& g, const std::vector<Complex>& phases_of_generator) {
  std::vector<Matrix> mats;
  const Index d = static_cast<Index>(phases_of_generator.size());
  for (int k = 0; k < g->order(); ++k) {
    Matrix m = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) m(i, i) = std::pow(phases_of_generator[i], k);
    mats.push_back(m);
  }
  return UnitaryRep(g, mats);
}

}  // namespace

TEST_SUITE("galois") {
  TEST_CASE("Z2 acting by Ad diag(1,-1) on M2") {
    const GroupPtr z2 = fixture_group("z2");
    const GaloisReport r = galois_map(StarAlgebra::full(2), diagonal_rep(z2, {1.0, -1.0}));
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].fixed_dim == 4);
    CHECK(r.rows[1].fixed_dim == 2);
    CHECK(r.fixed_algebras.at(r.rows[1].fixed_id).equals(StarAlgebra::diagonal(2)));
    CHECK(r.injective);
    CHECK(r.anti_monotone);
    CHECK(r.properness.proper);
    CHECK(r.violations.empty());
    for (const auto& row : r.rows) CHECK(row.bicommutant_verified);
  }

  TEST_CASE("Z4 acting through a character of order 2") {
    const GroupPtr z4 = fixture_group("z4");
    const GaloisReport r = galois_map(StarAlgebra::full(2), diagonal_rep(z4, {1.0, Complex(0, 1) * Complex(0, 1)}));
    REQUIRE(r.rows.size() == 3);
    // {0,2} acts trivially.
    CHECK(r.rows[1].fixed_dim == 4);
    CHECK(r.rows[2].fixed_dim == 2);
    CHECK(r.collisions == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(r.equivalence.classes == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(r.constant_on_classes);
    CHECK(r.injective);
    CHECK(r.violations.empty());
  }

  TEST_CASE("Z4 acting through a faithful character") {
    const GroupPtr z4 = fixture_group("z4");
    const GaloisReport r = galois_map(StarAlgebra::full(2), diagonal_rep(z4, {1.0, Complex(0, 1)}));
    CHECK(r.collisions == std::vector<std::pair<int, int>>{{1, 2}});
    // {0,2} and Z4 both span the diagonal matrices.
    CHECK(r.equivalence.classes.size() == 2);
    CHECK(r.constant_on_classes);
    CHECK(r.injective);
  }

  TEST_CASE("regular representation of S3") {
    const GroupPtr s3 = fixture_group("s3");
    const GaloisReport r = galois_map(StarAlgebra::full(6), regular_rep(s3));
    REQUIRE(r.rows.size() == 6);
    std::set<int> ids;
    for (const auto& row : r.rows) {
      CHECK(row.fixed_dim == 36 / row.subgroup.order());
      CHECK(row.bicommutant_residual < 1e-9);
      ids.insert(row.fixed_id);
    }
    CHECK(ids.size() == 6);
    CHECK(r.injective);
    CHECK(r.anti_monotone);
    CHECK(r.collisions.empty());
    CHECK(r.equivalence.classes.size() == 6);
    CHECK(r.violations.empty());
  }

  TEST_CASE("permutation representations: fixed dimensions count pair orbits") {
    for (int n : {3, 4}) {
      const GroupPtr g = symmetric_group(n);
      const auto perms = all_permutations(n);
      const GaloisReport r = galois_map(StarAlgebra::full(n), permutation_rep(g, perms));
      for (const auto& row : r.rows) CHECK(row.fixed_dim == pair_orbits(row.subgroup, perms));
      CHECK(r.anti_monotone);
      CHECK(r.constant_on_classes);
      CHECK_FALSE(r.properness.proper);
    }
  }

  TEST_CASE("per-irrep equivalence refines nothing coarser than the joint one") {
    const GroupPtr s3 = fixture_group("s3");
    const GaloisReport r = galois_map(StarAlgebra::full(3), permutation_rep(s3, all_permutations(3)));
    // Every joint class lies inside one per-irrep class.
    for (const auto& cls : r.equivalence.classes) {
      int hits = 0;
      for (const auto& pc : r.per_irrep_equivalence.classes)
        hits += std::find(pc.begin(), pc.end(), cls.front()) != pc.end();
      CHECK(hits == 1);
    }
  }

  TEST_CASE("ordinary commutant kind") {
    const GroupPtr s3 = fixture_group("s3");
    GaloisOptions opt;
    opt.kind = CommutantKind::Ordinary;
    const GaloisReport r = galois_map(StarAlgebra::full(6), regular_rep(s3), opt);
    CHECK(r.injective);
    CHECK(r.violations.empty());
    for (const auto& row : r.rows) CHECK(row.bicommutant_verified);
  }

  TEST_CASE("thread count does not change the report") {
    const GroupPtr d4 = fixture_group("d4");
    GaloisOptions one, three;
    three.threads = 3;
    const GaloisReport a = galois_map(StarAlgebra::full(8), regular_rep(d4), one);
    const GaloisReport b = galois_map(StarAlgebra::full(8), regular_rep(d4), three);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].fixed_id == b.rows[i].fixed_id);
      CHECK(a.rows[i].fixed_dim == b.rows[i].fixed_dim);
      CHECK(a.rows[i].bicommutant_residual == b.rows[i].bicommutant_residual);
    }
    CHECK(a.rows.size() == 10);
    CHECK(a.injective);
  }

  TEST_CASE("minimal actions") {
    const GroupPtr s3 = fixture_group("s3");
    const MinimalActionReport triv = is_minimal_action(StarAlgebra::full(3), trivial_rep(s3, 3));
    CHECK(triv.minimal);
    CHECK(triv.fixed_dim == 9);
    const MinimalActionReport reg = is_minimal_action(StarAlgebra::full(6), regular_rep(s3));
    CHECK_FALSE(reg.minimal);
    CHECK(reg.relative_commutant_dim == 6);
    CHECK(std::abs(reg.witness.norm() - 1.0) < 1e-12);
    CHECK(std::abs(reg.witness.trace()) < 1e-10);
    const StarAlgebra fixed = fixed_point_algebra(StarAlgebra::full(6), regular_rep(s3), Subgroup::whole(s3));
    for (const auto& b : fixed.elements()) CHECK((b * reg.witness - reg.witness * b).norm() < 1e-9);
  }
}
