#include "ncgalois/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ncgalois {

namespace {

std::string triple(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

GroupPtr FiniteGroup::from_table(MultTable mult, std::vector<std::string> labels) {
  const int n = static_cast<int>(mult.size());
  if (n == 0) throw Error(ErrorCode::InvalidInput, "multiplication table is empty");
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(mult[r].size()) != n)
      throw Error(ErrorCode::InvalidInput, "row " + std::to_string(r) + " has wrong length");
    for (int c = 0; c < n; ++c)
      if (mult[r][c] < 0 || mult[r][c] >= n)
        throw Error(ErrorCode::InvalidInput, "entry at " + std::to_string(r) + "," + std::to_string(c) + " out of range");
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw Error(ErrorCode::InvalidInput, "label count differs from order");

  for (int r = 0; r < n; ++r) {
    std::vector<int> seen(n, -1);
    for (int c = 0; c < n; ++c) {
      const int v = mult[r][c];
      if (seen[v] >= 0)
        throw Error(ErrorCode::NotLatinSquare, "row " + std::to_string(r) + " repeats " + std::to_string(v) +
                                                   " at columns " + std::to_string(seen[v]) + " and " + std::to_string(c) +
                                                   ", witness " + triple(r, seen[v], c));
      seen[v] = c;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::vector<int> seen(n, -1);
    for (int r = 0; r < n; ++r) {
      const int v = mult[r][c];
      if (seen[v] >= 0)
        throw Error(ErrorCode::NotLatinSquare, "column " + std::to_string(c) + " repeats " + std::to_string(v) +
                                                   " at rows " + std::to_string(seen[v]) + " and " + std::to_string(r) +
                                                   ", witness " + triple(seen[v], r, c));
      seen[v] = r;
    }
  }

  int e = -1;
  for (int cand = 0; cand < n && e < 0; ++cand) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = mult[cand][g] == g && mult[g][cand] == g;
    if (ok) e = cand;
  }
  if (e < 0) throw Error(ErrorCode::NoIdentity, "no element acts as two-sided identity, witness (0, 0, " + std::to_string(mult[0][0]) + ")");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = mult[a][b];
      for (int c = 0; c < n; ++c)
        if (mult[ab][c] != mult[a][mult[b][c]])
          throw Error(ErrorCode::NotAssociative, "(ab)c != a(bc) for witness " + triple(a, b, c));
    }

  std::vector<int> inv(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h)
      if (mult[g][h] == e && mult[h][g] == e) inv[g] = h;
    if (inv[g] < 0) throw Error(ErrorCode::NoInverse, "element has no two-sided inverse, witness " + triple(g, g, e));
  }

  auto grp = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  grp->mult_ = std::move(mult);
  grp->inverse_ = std::move(inv);
  grp->labels_ = std::move(labels);
  grp->identity_ = e;
  return grp;
}

std::string FiniteGroup::label(int g) const {
  if (!labels_.empty()) return labels_[g];
  return std::to_string(g);
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> members) : parent_(std::move(parent)), members_(std::move(members)) {
  if (!parent_) throw Error(ErrorCode::InvalidInput, "subgroup without parent group");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  const int n = parent_->order();
  for (int m : members_)
    if (m < 0 || m >= n) throw Error(ErrorCode::NotASubgroup, "member index " + std::to_string(m) + " out of range");
  if (!contains(parent_->identity())) throw Error(ErrorCode::NotASubgroup, "identity missing");
  for (int a : members_)
    for (int b : members_)
      if (!contains(parent_->mul(a, b)))
        throw Error(ErrorCode::NotASubgroup, "not closed: " + std::to_string(a) + "*" + std::to_string(b));
}

Subgroup Subgroup::trivial(const GroupPtr& parent) { return Subgroup(parent, {parent->identity()}); }

Subgroup Subgroup::whole(const GroupPtr& parent) {
  std::vector<int> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(parent, all);
}

bool Subgroup::contains(int g) const { return std::binary_search(members_.begin(), members_.end(), g); }

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

std::vector<int> Subgroup::generators() const {
  std::vector<int> gens;
  std::vector<int> span{parent_->identity()};
  for (int m : members_) {
    if (std::binary_search(span.begin(), span.end(), m)) continue;
    gens.push_back(m);
    span = generated_subgroup(*parent_, gens);
  }
  return gens;
}

bool Subgroup::operator<(const Subgroup& other) const {
  if (members_.size() != other.members_.size()) return members_.size() < other.members_.size();
  return members_ < other.members_;
}

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> list{g.identity()};
  in[g.identity()] = 1;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (int s : gens) {
      const int x = g.mul(list[i], s);
      if (!in[x]) {
        in[x] = 1;
        list.push_back(x);
      }
    }
  std::sort(list.begin(), list.end());
  return list;
}

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g, int order_bound) {
  if (g->order() > order_bound)
    throw Error(ErrorCode::OrderBoundExceeded,
                "order " + std::to_string(g->order()) + " exceeds bound " + std::to_string(order_bound));
  std::set<std::vector<int>> cyclic;
  for (int x = 0; x < g->order(); ++x) cyclic.insert(generated_subgroup(*g, {x}));

  std::set<std::vector<int>> found(cyclic.begin(), cyclic.end());
  std::vector<std::vector<int>> frontier(cyclic.begin(), cyclic.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& a : frontier)
      for (const auto& c : cyclic) {
        if (std::includes(a.begin(), a.end(), c.begin(), c.end())) continue;
        std::vector<int> gens = a;
        gens.insert(gens.end(), c.begin(), c.end());
        auto joined = generated_subgroup(*g, gens);
        if (found.insert(joined).second) next.push_back(std::move(joined));
      }
    frontier = std::move(next);
  }

  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& m : found) out.emplace_back(g, m);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<char> done(n, 0);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n; ++x) {
    if (done[x]) continue;
    std::set<int> cls;
    for (int h = 0; h < n; ++h) cls.insert(g.mul(g.mul(h, x), g.inverse(h)));
    for (int y : cls) done[y] = 1;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

bool is_normal(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  for (int x = 0; x < g.order(); ++x)
    for (int m : h.members())
      if (!h.contains(g.mul(g.mul(x, m), g.inverse(x)))) return false;
  return true;
}

GroupFunction::GroupFunction(GroupPtr parent, std::vector<Complex> values)
    : parent_(std::move(parent)), values_(std::move(values)) {
  if (!parent_) throw Error(ErrorCode::InvalidInput, "group function without parent group");
  if (static_cast<int>(values_.size()) != parent_->order())
    throw Error(ErrorCode::DimensionMismatch, "group function length differs from group order");
}

GroupFunction GroupFunction::zero(const GroupPtr& parent) {
  return GroupFunction(parent, std::vector<Complex>(parent->order(), 0.0));
}

GroupFunction GroupFunction::delta(const GroupPtr& parent, int g) {
  GroupFunction f = zero(parent);
  f[g] = 1.0;
  return f;
}

GroupFunction GroupFunction::uniform(const GroupPtr& parent, Complex value) {
  return GroupFunction(parent, std::vector<Complex>(parent->order(), value));
}

void require_same_parent(const GroupPtr& a, const GroupPtr& b) {
  if (!a || !b || !a->same_as(*b)) throw Error(ErrorCode::ParentMismatch, "operands belong to different groups");
}

GroupFunction convolve(const GroupFunction& x, const GroupFunction& y, Convolution conv) {
  require_same_parent(x.parent(), y.parent());
  const FiniteGroup& g = *x.parent();
  const int n = g.order();
  std::vector<Complex> out(n, 0.0);
  for (int h = 0; h < n; ++h) {
    if (x(h) == Complex(0.0)) continue;
    for (int k = 0; k < n; ++k) out[g.mul(h, k)] += x(h) * y(k);
  }
  if (conv == Convolution::Function)
    for (auto& v : out) v /= static_cast<double>(n);
  return GroupFunction(x.parent(), std::move(out));
}

GroupFunction involute(const GroupFunction& x) {
  const FiniteGroup& g = *x.parent();
  std::vector<Complex> out(g.order());
  for (int h = 0; h < g.order(); ++h) out[h] = std::conj(x(g.inverse(h)));
  return GroupFunction(x.parent(), std::move(out));
}

Complex haar_integral(const GroupFunction& x) {
  Complex s = 0.0;
  for (const auto& v : x.values()) s += v;
  return s / static_cast<double>(x.size());
}

double max_abs_diff(const GroupFunction& a, const GroupFunction& b) {
  require_same_parent(a.parent(), b.parent());
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a(i) - b(i)));
  return m;
}

std::vector<Permutation> all_permutations(int n, bool even_only) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    if (even_only) {
      int inversions = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
      if (inversions % 2) continue;
    }
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

GroupPtr permutation_group(const std::vector<Permutation>& elements) {
  std::map<Permutation, int> index;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) index[elements[i]] = i;
  const int n = static_cast<int>(elements.size());
  MultTable t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    const Permutation& p = elements[a];
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << "]";
    labels.push_back(os.str());
    for (int b = 0; b < n; ++b) {
      const Permutation& q = elements[b];
      Permutation pq(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) pq[i] = p[q[i]];
      auto it = index.find(pq);
      if (it == index.end()) throw Error(ErrorCode::InvalidInput, "permutation set is not closed under composition");
      t[a][b] = it->second;
    }
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

GroupPtr cyclic_group(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "cyclic group order must be positive");
  MultTable t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back("r^" + std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

GroupPtr dihedral_group(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "dihedral parameter must be positive");
  const int order = 2 * n;
  MultTable t(order, std::vector<int>(order));
  std::vector<std::string> labels;
  for (int a = 0; a < order; ++a) {
    const int fa = a / n, ka = a % n;
    labels.push_back((fa ? "s r^" : "r^") + std::to_string(ka));
    for (int b = 0; b < order; ++b) {
      const int fb = b / n, kb = b % n;
      // s^fa r^ka s^fb r^kb = s^(fa+fb) r^((-1)^fb ka + kb)
      const int k = (((fb ? -ka : ka) + kb) % n + n) % n;
      t[a][b] = ((fa + fb) % 2) * n + k;
    }
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

GroupPtr quaternion_group() {
  // Unit index u in {1,i,j,k} and sign s: element 2u + s.
  static const int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  MultTable t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      const int s = (a % 2 + b % 2 + unit_sign[ua][ub]) % 2;
      t[a][b] = 2 * unit_prod[ua][ub] + s;
    }
  return FiniteGroup::from_table(std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

GroupPtr symmetric_group(int n) { return permutation_group(all_permutations(n)); }

GroupPtr alternating_group(int n) { return permutation_group(all_permutations(n, true)); }

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  MultTable t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int x = 0; x < n; ++x) {
    labels.push_back("(" + a.label(x / nb) + "," + b.label(x % nb) + ")");
    for (int y = 0; y < n; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return FiniteGroup::from_table(std::move(t), std::move(labels));
}

GroupPtr named_group(const std::string& name) {
  if (name.size() >= 2 && name[0] == 'Z') return cyclic_group(std::stoi(name.substr(1)));
  if (name == "S3") return symmetric_group(3);
  if (name == "S4") return symmetric_group(4);
  if (name == "A4") return alternating_group(4);
  if (name == "D4") return dihedral_group(4);
  if (name == "D3") return dihedral_group(3);
  if (name == "Q8") return quaternion_group();
  if (name == "V4") return direct_product(*cyclic_group(2), *cyclic_group(2));
  throw Error(ErrorCode::InvalidInput, "unknown group name " + name);
}

}  // namespace ncgalois
