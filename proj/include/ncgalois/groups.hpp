#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ncgalois/numerics.hpp"

namespace ncgalois {

using MultTable = std::vector<std::vector<int>>;
using Permutation = std::vector<int>;

class FiniteGroup {
 public:
  // Validates the table: Latin square, identity, associativity, inverses.
  static std::shared_ptr<const FiniteGroup> from_table(MultTable mult, std::vector<std::string> labels = {});

  int order() const { return static_cast<int>(mult_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return mult_[a][b]; }
  int inverse(int g) const { return inverse_[g]; }
  const MultTable& table() const { return mult_; }
  const std::vector<int>& inverses() const { return inverse_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int g) const;

  bool same_as(const FiniteGroup& other) const { return this == &other || mult_ == other.mult_; }

 private:
  FiniteGroup() = default;
  MultTable mult_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  int identity_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr group_from_table(MultTable mult, std::vector<std::string> labels = {}) {
  return FiniteGroup::from_table(std::move(mult), std::move(labels));
}

class Subgroup {
 public:
  // Throws NotASubgroup unless members form a subgroup of parent.
  Subgroup(GroupPtr parent, std::vector<int> members);
  static Subgroup trivial(const GroupPtr& parent);
  static Subgroup whole(const GroupPtr& parent);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& members() const { return members_; }
  int order() const { return static_cast<int>(members_.size()); }
  bool contains(int g) const;
  bool is_subgroup_of(const Subgroup& other) const;
  // Greedy generating set: adds a member whenever it is outside the span so far.
  std::vector<int> generators() const;

  bool operator==(const Subgroup& other) const { return members_ == other.members_; }
  bool operator<(const Subgroup& other) const;

 private:
  GroupPtr parent_;
  std::vector<int> members_;
};

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g, int order_bound = 48);
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);
bool is_normal(const Subgroup& h);

enum class Convolution { Measure, Function };

class GroupFunction {
 public:
  GroupFunction(GroupPtr parent, std::vector<Complex> values);
  static GroupFunction zero(const GroupPtr& parent);
  static GroupFunction delta(const GroupPtr& parent, int g);
  static GroupFunction uniform(const GroupPtr& parent, Complex value = 1.0);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex operator()(int g) const { return values_[g]; }
  Complex& operator[](int g) { return values_[g]; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  GroupPtr parent_;
  std::vector<Complex> values_;
};

void require_same_parent(const GroupPtr& a, const GroupPtr& b);

// Measure: (x*y)(g) = sum_h x(h) y(h^-1 g). Function: the same sum divided by |G|.
GroupFunction convolve(const GroupFunction& x, const GroupFunction& y, Convolution conv);
GroupFunction involute(const GroupFunction& x);
Complex haar_integral(const GroupFunction& x);
double max_abs_diff(const GroupFunction& a, const GroupFunction& b);

// Builders. Element order is fixed and documented per builder.
std::vector<Permutation> all_permutations(int n, bool even_only = false);
// Composition (p q)(i) = p(q(i)).
GroupPtr permutation_group(const std::vector<Permutation>& elements);
GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int n);  // order 2n, element f*n + k is s^f r^k
GroupPtr quaternion_group();     // 1,-1,i,-i,j,-j,k,-k
GroupPtr symmetric_group(int n);
GroupPtr alternating_group(int n);
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);
// Fixture names: Z2..Zn, S3, S4, A4, D4, Q8, V4.
GroupPtr named_group(const std::string& name);

}  // namespace ncgalois
