#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"
#include "ncgalois/ncprob.hpp"
#include "support.hpp"

using namespace ncgalois;
using testing_support::fixture_group;
using testing_support::unit;

namespace {

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

StarAlgebra left_factor() { return algebra_from_generators({kron(unit(2, 0, 1), Matrix::Identity(2, 2))}, 4); }
StarAlgebra right_factor() { return algebra_from_generators({kron(Matrix::Identity(2, 2), unit(2, 0, 1))}, 4); }

UnitaryRep s3_perm() { return permutation_rep(fixture_group("s3"), all_permutations(3)); }

}  // namespace

TEST_SUITE("ncprob") {
  TEST_CASE("state validation") {
    CHECK(State(unit(2, 0, 0)).min_eigenvalue() == doctest::Approx(0.0));
    CHECK_FALSE(State(unit(2, 0, 0)).faithful());
    CHECK(State::tracial(3).faithful());
    CHECK_THROWS_AS(State(Matrix::Identity(2, 2)), Error);
    CHECK_THROWS_AS(State(unit(2, 0, 1)), Error);
    Matrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(State{neg}, Error);
  }

  TEST_CASE("averaged states") {
    const State avg = average_state(State(unit(3, 0, 0)), s3_perm());
    CHECK((avg.density() - Matrix::Identity(3, 3) / 3.0).norm() < 1e-14);
    CHECK_THROWS_AS(average_state(State::tracial(2), s3_perm()), Error);
  }

  TEST_CASE("conditional expectations of e11") {
    const UnitaryRep u = s3_perm();
    const GroupPtr s3 = u.group();
    CHECK((conditional_expectation(unit(3, 0, 0), u, Subgroup::whole(s3)) - Matrix::Identity(3, 3) / 3.0).norm() < 1e-14);
    CHECK((conditional_expectation(unit(3, 0, 0), u, Subgroup(s3, {0, 3, 4})) - Matrix::Identity(3, 3) / 3.0).norm() < 1e-14);
    // Element 1 is the transposition of 1 and 2, which fixes 0.
    CHECK((conditional_expectation(unit(3, 0, 0), u, Subgroup(s3, {0, 1})) - unit(3, 0, 0)).norm() < 1e-14);
    Matrix e22_33 = (unit(3, 1, 1) + unit(3, 2, 2)) / 2.0;
    CHECK((conditional_expectation(unit(3, 1, 1), u, Subgroup(s3, {0, 1})) - e22_33).norm() < 1e-14);
  }

  TEST_CASE("axioms for every subgroup of S3 and the negative control") {
    const UnitaryRep u = s3_perm();
    Rng rng(12);
    const State phi = average_state(State(rng.density(3)), u);
    for (const auto& h : enumerate_subgroups(u.group())) {
      CAPTURE(h.order());
      const CondExpReport r = verify_cond_exp_axioms(u, h, phi);
      CHECK(r.all_passed);
      for (const auto& a : r.axioms) CHECK(a.residual < 1e-9);
      CHECK(r.axioms.size() == 7);
    }
    Matrix skew = Matrix::Zero(3, 3);
    skew.diagonal() << 0.6, 0.3, 0.1;
    const State bad(skew);
    const CondExpReport r = verify_cond_exp_axioms(u, Subgroup::whole(u.group()), bad);
    CHECK_FALSE(r.all_passed);
    CHECK_FALSE(r.axiom("state_preserving").passed);
    CHECK(r.axiom("state_preserving").residual > 1e-3);
    CHECK_FALSE(r.axiom("state_preserving").witness.empty());
    CHECK(r.axiom("bimodule").passed);
    CHECK_THROWS_AS(r.axiom("nonsense"), Error);
  }

  TEST_CASE("state-preserving projection onto scalars is the state") {
    Rng rng(3);
    const State phi(rng.density(3));
    const Matrix a = rng.gaussian(3, 3);
    CHECK((state_preserving_projection(a, StarAlgebra::scalars(3), phi) - phi(a) * Matrix::Identity(3, 3)).norm() < 1e-12);
    CHECK((state_preserving_projection(a, StarAlgebra::full(3), phi) - a).norm() < 1e-10);
  }

  TEST_CASE("tensor factors under a product state are independent") {
    Rng rng(6);
    const State phi(kron(rng.density(2), rng.density(2)));
    const IndependenceReport r = independence_check(left_factor(), right_factor(), phi);
    CHECK(r.commuting);
    CHECK(r.factorizes);
    CHECK(r.independent);
    CHECK(r.e_independent);
    CHECK(r.implication_holds);
  }

  TEST_CASE("an entangled state breaks factorization") {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const State phi(Matrix(0.9 * bell * bell.adjoint() + 0.1 * Matrix::Identity(4, 4) / 4.0));
    const IndependenceReport r = independence_check(left_factor(), right_factor(), phi);
    CHECK(r.commuting);
    CHECK_FALSE(r.factorizes);
    CHECK_FALSE(r.independent);
    CHECK(r.implication_holds);
  }

  TEST_CASE("the diagonal algebra is not independent of itself") {
    Matrix rho = Matrix::Zero(2, 2);
    rho.diagonal() << 0.25, 0.75;
    const IndependenceReport r = independence_check(StarAlgebra::diagonal(2), StarAlgebra::diagonal(2), State(rho));
    CHECK(r.commuting);
    CHECK_FALSE(r.factorizes);
    CHECK(r.factorization_residual == doctest::Approx(0.1875));
    CHECK_THROWS_AS(independence_check(StarAlgebra::diagonal(2), StarAlgebra::diagonal(2), State(unit(2, 0, 0))), Error);
  }

  TEST_CASE("filtrations must decrease") {
    const UnitaryRep u = s3_perm();
    const GroupPtr s3 = u.group();
    try {
      Filtration({Subgroup(s3, {0, 3, 4}), Subgroup::whole(s3)}, u, StarAlgebra::full(3));
      FAIL("expected NotAChain");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAChain);
    }
    CHECK_THROWS_AS(Filtration({}, u, StarAlgebra::full(3)), Error);
  }

  TEST_CASE("S3 martingale of e11") {
    const UnitaryRep u = s3_perm();
    const GroupPtr s3 = u.group();
    const Filtration f({Subgroup::whole(s3), Subgroup(s3, {0, 3, 4}), Subgroup::trivial(s3)}, u, StarAlgebra::full(3));
    CHECK(f.algebras()[0].dim() == 2);
    CHECK(f.algebras()[1].dim() == 3);
    CHECK(f.algebras()[2].dim() == 9);
    CHECK(f.top_equals_ambient());
    const Martingale m = martingale_from(unit(3, 0, 0), f, u);
    CHECK(m.martingale_residual < 1e-12);
    CHECK(m.adaptedness_residual < 1e-12);
    CHECK(m.tower_residual < 1e-9);
    const ConvergenceReport c = convergence_check(m, f, unit(3, 0, 0), State::tracial(3));
    REQUIRE(c.moments.size() == 3);
    CHECK(c.moments[0] == doctest::Approx(1.0 / 9.0));
    CHECK(c.moments[1] == doctest::Approx(1.0 / 9.0));
    CHECK(c.moments[2] == doctest::Approx(1.0 / 3.0));
    CHECK(c.nondecreasing);
    CHECK(c.terminal_trivial);
    CHECK(c.terminal_residual < 1e-12);
  }

  TEST_CASE("the identity is a constant martingale") {
    const UnitaryRep u = regular_rep(fixture_group("d4"));
    const GroupPtr d4 = u.group();
    const auto subs = enumerate_subgroups(d4);
    std::vector<Subgroup> chain{subs.back()};
    for (auto it = subs.rbegin(); it != subs.rend(); ++it)
      if (it->order() * 2 == chain.back().order() && it->is_subgroup_of(chain.back())) chain.push_back(*it);
    CHECK(chain.size() == 4);
    const Filtration f(chain, u, StarAlgebra::full(8));
    const Matrix id = Matrix::Identity(8, 8);
    const Martingale m = martingale_from(id, f, u);
    for (const auto& x : m.elements) CHECK((x - id).norm() < 1e-12);
    const ConvergenceReport c = convergence_check(m, f, id, State::tracial(8));
    for (double v : c.moments) CHECK(v == doctest::Approx(1.0));
    CHECK(c.nondecreasing);
  }

  TEST_CASE("martingale threads agree") {
    const UnitaryRep u = regular_rep(fixture_group("s4"));
    const GroupPtr s4 = u.group();
    const auto subs = enumerate_subgroups(s4);
    std::vector<Subgroup> chain{subs.back()};
    for (auto it = subs.rbegin(); it != subs.rend(); ++it)
      if (it->order() < chain.back().order() && it->is_subgroup_of(chain.back()) && chain.size() < 3) chain.push_back(*it);
    const Filtration f(chain, u, StarAlgebra::full(24));
    Rng rng(1);
    const Matrix x = rng.gaussian(24, 24);
    const Martingale a = martingale_from(x, f, u, 5, 1), b = martingale_from(x, f, u, 5, 3);
    CHECK(a.tower_residual == b.tower_residual);
    for (std::size_t t = 0; t < a.elements.size(); ++t) CHECK(a.elements[t] == b.elements[t]);
  }
}
