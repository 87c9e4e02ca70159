#include "ncgalois/galois.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "ncgalois/parallel.hpp"

namespace ncgalois {

namespace {

constexpr std::uint64_t kSignatureSeed = 0xbb67ae8584caa73bULL;

SubgroupEquivalence partition(std::size_t count, const std::function<bool(std::size_t, std::size_t)>& same) {
  SubgroupEquivalence eq;
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < count; ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < reps.size() && !placed; ++c)
      if (same(reps[c], i)) {
        eq.classes[c].push_back(static_cast<int>(i));
        placed = true;
      }
    if (!placed) {
      reps.push_back(i);
      eq.classes.push_back({static_cast<int>(i)});
    }
  }
  return eq;
}

Subspace span_of(const std::vector<int>& members, const IrrepTable& table, const std::vector<int>& sigmas) {
  Index len = 0;
  for (int s : sigmas) len += table.dim(s) * table.dim(s);
  Matrix cols(len, static_cast<Index>(members.size()));
  for (std::size_t k = 0; k < members.size(); ++k) {
    Index off = 0;
    for (int s : sigmas) {
      const Vector v = vec(table.irreps[s](members[k]));
      cols.col(static_cast<Index>(k)).segment(off, v.size()) = v;
      off += v.size();
    }
  }
  return column_span(cols);
}

// Projection norms of fixed probe matrices; equal subspaces give equal signatures.
std::vector<double> signature(const StarAlgebra& a) {
  const Index n = a.ambient_dim();
  Rng rng(kSignatureSeed);
  std::vector<double> key{static_cast<double>(a.dim())};
  for (int k = 0; k < 3; ++k) key.push_back(a.project(rng.gaussian(n, n)).norm());
  return key;
}

bool signatures_close(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-6 * std::max(1.0, std::abs(a[i]))) return false;
  return true;
}

}  // namespace

SubgroupEquivalence subgroup_equivalence(const std::vector<Subgroup>& subgroups, const IrrepTable& table,
                                         const std::vector<int>& sigma_prime) {
  std::vector<Subspace> spans;
  for (const auto& h : subgroups) spans.push_back(span_of(h.members(), table, sigma_prime));
  return partition(subgroups.size(), [&](std::size_t a, std::size_t b) { return subspace_equal(spans[a], spans[b]); });
}

SubgroupEquivalence subgroup_equivalence_per_irrep(const std::vector<Subgroup>& subgroups, const IrrepTable& table,
                                                   const std::vector<int>& sigma_prime) {
  std::vector<std::vector<Subspace>> spans;
  for (const auto& h : subgroups) {
    std::vector<Subspace> per;
    for (int s : sigma_prime) per.push_back(span_of(h.members(), table, {s}));
    spans.push_back(std::move(per));
  }
  return partition(subgroups.size(), [&](std::size_t a, std::size_t b) {
    for (std::size_t s = 0; s < sigma_prime.size(); ++s)
      if (!subspace_equal(spans[a][s], spans[b][s])) return false;
    return true;
  });
}

GaloisReport galois_map(const StarAlgebra& m, const UnitaryRep& pi, const GaloisOptions& options) {
  return galois_map(m, pi, enumerate_subgroups(pi.group()), options);
}

GaloisReport galois_map(const StarAlgebra& m, const UnitaryRep& pi, const std::vector<Subgroup>& subgroups,
                        const GaloisOptions& options) {
  GaloisReport report;
  report.group = pi.group();
  report.kind = options.kind;
  report.ambient_dim = m.ambient_dim();
  report.ambient_algebra_dim = m.dim();
  report.properness = is_proper(pi);

  const std::size_t count = subgroups.size();
  std::vector<std::optional<StarAlgebra>> fixed(count);
  std::vector<double> bicomm(count, 0.0);
  parallel_for(count, options.threads, [&](std::size_t i) {
    StarAlgebra f = fixed_point_algebra(m, pi, subgroups[i], options.tol);
    if (options.kind == CommutantKind::Relative) {
      const StarAlgebra b = relative_commutant(relative_commutant(f, m, options.tol), m, options.tol);
      bicomm[i] = b.dim() == f.dim() ? subspace_distance(b.subspace(), f.subspace()) : 1.0;
    } else {
      const StarAlgebra b = intersect(commutant(commutant(f, options.tol), options.tol), m, options.tol);
      bicomm[i] = b.dim() == f.dim() ? subspace_distance(b.subspace(), f.subspace()) : 1.0;
    }
    fixed[i] = std::move(f);
  });

  std::vector<std::vector<double>> signatures;
  for (std::size_t i = 0; i < count; ++i) {
    const StarAlgebra& f = *fixed[i];
    const std::vector<double> sig = signature(f);
    int id = -1;
    for (std::size_t cand = 0; cand < signatures.size() && id < 0; ++cand)
      if (signatures_close(signatures[cand], sig) && report.fixed_algebras[cand].equals(f)) id = static_cast<int>(cand);
    if (id < 0) {
      id = static_cast<int>(report.fixed_algebras.size());
      report.fixed_algebras.push_back(f);
      signatures.push_back(sig);
    }
    GaloisRow row{subgroups[i], f.dim(), id, bicomm[i] <= 1e-9, bicomm[i]};
    if (!row.bicommutant_verified)
      report.violations.push_back({"bicommutant", "subgroup row " + std::to_string(i) + " residual " + std::to_string(bicomm[i])});
    report.rows.push_back(std::move(row));
  }

  report.anti_monotone = true;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j || !subgroups[i].is_subgroup_of(subgroups[j])) continue;
      if (!fixed[i]->contains(*fixed[j])) {
        report.anti_monotone = false;
        report.violations.push_back({"anti_monotone", "rows " + std::to_string(i) + " within " + std::to_string(j)});
      }
    }
  for (std::size_t i = 0; i < count; ++i) {
    if (subgroups[i].order() == 1 && !fixed[i]->equals(m))
      report.violations.push_back({"bottom", "fixed algebra of the trivial subgroup differs from M"});
    if (!m.contains(*fixed[i])) report.violations.push_back({"top", "fixed algebra of row " + std::to_string(i) + " leaves M"});
  }

  const auto table = irrep_table(pi.group());
  report.equivalence = subgroup_equivalence(subgroups, *table, report.properness.sigma_prime);
  report.per_irrep_equivalence = subgroup_equivalence_per_irrep(subgroups, *table, report.properness.sigma_prime);

  report.constant_on_classes = true;
  std::vector<int> class_id;
  for (const auto& cls : report.equivalence.classes) {
    const int id = report.rows[cls.front()].fixed_id;
    class_id.push_back(id);
    for (int r : cls) report.constant_on_classes = report.constant_on_classes && report.rows[r].fixed_id == id;
  }
  std::vector<int> sorted_ids = class_id;
  std::sort(sorted_ids.begin(), sorted_ids.end());
  report.injective = std::adjacent_find(sorted_ids.begin(), sorted_ids.end()) == sorted_ids.end();

  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (report.rows[i].fixed_id == report.rows[j].fixed_id)
        report.collisions.emplace_back(static_cast<int>(i), static_cast<int>(j));

  const bool expected = m.is_full() || report.properness.proper;
  if (expected && !report.injective)
    report.violations.push_back({"injective", "inequivalent subgroups share a fixed algebra"});
  if (expected && !report.constant_on_classes)
    report.violations.push_back({"constant_on_classes", "equivalent subgroups have different fixed algebras"});
  return report;
}

MinimalActionReport is_minimal_action(const StarAlgebra& m, const UnitaryRep& pi) {
  MinimalActionReport r;
  const StarAlgebra f = fixed_point_algebra(m, pi, Subgroup::whole(pi.group()));
  const StarAlgebra rel = relative_commutant(f, m);
  r.fixed_dim = f.dim();
  r.relative_commutant_dim = rel.dim();
  r.minimal = rel.dim() == 1;
  if (!r.minimal) {
    const Index n = m.ambient_dim();
    const Matrix id = Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
    double best = -1.0;
    for (const auto& b : rel.elements()) {
      const Matrix x = b - (id.adjoint() * b).trace() * id;
      if (x.norm() > best + 1e-12) {
        best = x.norm();
        r.witness = x / x.norm();
      }
    }
  }
  return r;
}

}  // namespace ncgalois
