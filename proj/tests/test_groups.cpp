#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "ncgalois/groups.hpp"
#include "support.hpp"

using namespace ncgalois;
using testing_support::fixture_group;
using testing_support::fixture_group_names;

namespace {

ErrorCode code_of(const MultTable& t) {
  try {
    FiniteGroup::from_table(t);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("table was accepted");
  return ErrorCode::InvalidInput;
}

// Every subset closed under the product, found by brute force.
std::set<std::vector<int>> brute_force_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> out;
  const int n = g.order();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & (1u << g.identity()))) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = 0; b < n && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !(mask >> g.mul(a, b) & 1)) closed = false;
    if (!closed) continue;
    std::vector<int> members;
    for (int a = 0; a < n; ++a)
      if (mask >> a & 1) members.push_back(a);
    out.insert(members);
  }
  return out;
}

GroupFunction random_function(const GroupPtr& g, Rng& rng) {
  std::vector<Complex> v;
  for (int i = 0; i < g->order(); ++i) v.push_back(rng.complex_normal());
  return GroupFunction(g, v);
}

}  // namespace

TEST_SUITE("groups") {
  TEST_CASE("fixture files agree with the builders") {
    const std::map<std::string, std::string> names{{"z2", "Z2"}, {"z4", "Z4"}, {"z6", "Z6"}, {"s3", "S3"},
                                                   {"d4", "D4"}, {"q8", "Q8"}, {"a4", "A4"}, {"s4", "S4"}};
    for (const auto& [file, name] : names) {
      CAPTURE(file);
      const GroupPtr g = fixture_group(file);
      CHECK(g->same_as(*named_group(name)));
      CHECK(g->labels() == named_group(name)->labels());
    }
  }

  TEST_CASE("Z2 table") {
    const GroupPtr g = FiniteGroup::from_table({{0, 1}, {1, 0}});
    CHECK(g->order() == 2);
    CHECK(g->identity() == 0);
    CHECK(g->inverse(1) == 1);
  }

  TEST_CASE("S3 from composing permutations") {
    const GroupPtr g = symmetric_group(3);
    CHECK(g->order() == 6);
    CHECK(g->label(g->identity()) == "[0,1,2]");
    const auto perms = all_permutations(3);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        Permutation c(3);
        for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
        CHECK(perms[g->mul(a, b)] == c);
      }
  }

  TEST_CASE("table validation errors") {
    CHECK(code_of({{0, 1}, {1, 1}}) == ErrorCode::NotLatinSquare);
    CHECK(code_of({{0, 1}, {1}}) == ErrorCode::InvalidInput);
    CHECK(code_of({{0, 2}, {1, 0}}) == ErrorCode::InvalidInput);
    CHECK(code_of({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}) == ErrorCode::NoIdentity);
    // Order-5 loop: every element squares to the identity.
    CHECK(code_of({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}) ==
          ErrorCode::NotAssociative);
  }

  TEST_CASE("subgroup enumeration matches brute force on small fixtures") {
    for (const auto& name : {"z2", "z4", "z6", "s3", "d4", "q8"}) {
      CAPTURE(name);
      const GroupPtr g = fixture_group(name);
      const auto subs = enumerate_subgroups(g);
      std::set<std::vector<int>> got;
      for (const auto& h : subs) got.insert(h.members());
      CHECK(got.size() == subs.size());
      CHECK(got == brute_force_subgroups(*g));
      CHECK(std::is_sorted(subs.begin(), subs.end()));
    }
  }

  TEST_CASE("subgroup counts") {
    const std::map<std::string, std::size_t> counts{{"z2", 2}, {"z4", 3}, {"z6", 4},  {"s3", 6},
                                                    {"d4", 10}, {"q8", 6}, {"a4", 10}, {"s4", 30}};
    for (const auto& [name, count] : counts) {
      CAPTURE(name);
      const GroupPtr g = fixture_group(name);
      const auto subs = enumerate_subgroups(g);
      CHECK(subs.size() == count);
      for (const auto& h : subs) CHECK(g->order() % h.order() == 0);
      CHECK(subs.front().order() == 1);
      CHECK(subs.back().order() == g->order());
    }
    std::vector<int> z6_orders;
    for (const auto& h : enumerate_subgroups(fixture_group("z6"))) z6_orders.push_back(h.order());
    CHECK(z6_orders == std::vector<int>{1, 2, 3, 6});
  }

  TEST_CASE("order bound") {
    CHECK_THROWS_AS(enumerate_subgroups(fixture_group("s4"), 12), Error);
  }

  TEST_CASE("conjugacy classes") {
    const GroupPtr s3 = fixture_group("s3");
    std::vector<std::size_t> sizes;
    for (const auto& c : conjugacy_classes(*s3)) sizes.push_back(c.size());
    CHECK(sizes == std::vector<std::size_t>{1, 3, 2});
    for (const auto& c : conjugacy_classes(*fixture_group("z6"))) CHECK(c.size() == 1);
    const std::map<std::string, std::size_t> counts{{"d4", 5}, {"q8", 5}, {"a4", 4}, {"s4", 5}};
    for (const auto& [name, count] : counts) CHECK(conjugacy_classes(*fixture_group(name)).size() == count);
  }

  TEST_CASE("normality in S3") {
    const GroupPtr s3 = fixture_group("s3");
    CHECK_FALSE(is_normal(Subgroup(s3, {0, 1})));
    CHECK(is_normal(Subgroup(s3, {0, 3, 4})));
    CHECK_THROWS_AS(Subgroup(s3, {0, 1, 3}), Error);
  }

  TEST_CASE("function convolution on Z2") {
    const GroupPtr z2 = fixture_group("z2");
    const GroupFunction x(z2, {1.0, 2.0}), y(z2, {3.0, 4.0});
    const GroupFunction c = convolve(x, y, Convolution::Function);
    CHECK(c(0).real() == doctest::Approx(5.5));
    CHECK(c(1).real() == doctest::Approx(5.0));
  }

  TEST_CASE("convolution is associative and the involution reverses products") {
    Rng rng(21);
    for (const auto& name : fixture_group_names()) {
      CAPTURE(name);
      const GroupPtr g = fixture_group(name);
      for (int trial = 0; trial < 3; ++trial) {
        const GroupFunction x = random_function(g, rng), y = random_function(g, rng), z = random_function(g, rng);
        for (Convolution conv : {Convolution::Measure, Convolution::Function}) {
          CHECK(max_abs_diff(convolve(convolve(x, y, conv), z, conv), convolve(x, convolve(y, z, conv), conv)) < 1e-10);
          CHECK(max_abs_diff(involute(convolve(x, y, conv)), convolve(involute(y), involute(x), conv)) < 1e-10);
        }
        CHECK(max_abs_diff(involute(involute(x)), x) == 0.0);
        std::vector<Complex> flipped;
        for (int h = 0; h < g->order(); ++h) flipped.push_back(x(g->inverse(h)));
        CHECK(std::abs(haar_integral(GroupFunction(g, flipped)) - haar_integral(x)) < 1e-12);
      }
    }
  }

  TEST_CASE("functions over different groups do not mix") {
    CHECK_THROWS_AS(convolve(GroupFunction::delta(fixture_group("z2"), 0), GroupFunction::delta(fixture_group("z4"), 0),
                             Convolution::Measure),
                    Error);
  }

  TEST_CASE("generated subgroups and generators") {
    const GroupPtr s4 = fixture_group("s4");
    for (const auto& h : enumerate_subgroups(s4)) CHECK(generated_subgroup(*s4, h.generators()) == h.members());
    CHECK(Subgroup::trivial(s4).generators().empty());
  }

  TEST_CASE("direct product of Z2 with itself is the Klein group") {
    const GroupPtr v4 = named_group("V4");
    CHECK(v4->order() == 4);
    for (int g = 0; g < 4; ++g) CHECK(v4->mul(g, g) == v4->identity());
  }
}
