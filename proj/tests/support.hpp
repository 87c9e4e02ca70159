#pragma once

#include <string>
#include <vector>

#include "ncgalois/algebras.hpp"
#include "ncgalois/io.hpp"

namespace testing_support {

inline std::string fixture(const std::string& rel) { return std::string(NCGALOIS_FIXTURES_DIR) + "/" + rel; }

inline ncgalois::GroupPtr fixture_group(const std::string& name) {
  using namespace ncgalois;
  return io::group_from_json(io::parse_json(io::read_file(fixture("groups/" + name + ".json")), name));
}

inline const std::vector<std::string>& fixture_group_names() {
  static const std::vector<std::string> names{"z2", "z4", "z6", "s3", "d4", "q8", "a4", "s4"};
  return names;
}

inline ncgalois::Matrix unit(ncgalois::Index n, ncgalois::Index i, ncgalois::Index j) {
  ncgalois::Matrix m = ncgalois::Matrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

inline double max_abs(const ncgalois::Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

struct PlantedAlgebra {
  ncgalois::Index n = 0;
  std::vector<ncgalois::WedderburnBlock> blocks;
  std::vector<ncgalois::Matrix> generators;
  ncgalois::Index expected_dim = 0;
};

// Random unitary conjugate of sum_i M_{n_i} (x) 1_{m_i} with sum n_i m_i = n <= max_n, plus
// two random elements of it as generators. The dimension sum n_i^2 is known in advance.
inline PlantedAlgebra planted_algebra(ncgalois::Rng& rng, ncgalois::Index max_n) {
  using namespace ncgalois;
  PlantedAlgebra p;
  p.n = 1 + static_cast<Index>(rng.index(static_cast<std::size_t>(max_n)));
  Index left = p.n;
  while (left > 0) {
    const Index b = 1 + static_cast<Index>(rng.index(static_cast<std::size_t>(left)));
    const Index m = 1 + static_cast<Index>(rng.index(static_cast<std::size_t>(left / b)));
    p.blocks.push_back({b, m});
    p.expected_dim += b * b;
    left -= b * m;
  }
  const Matrix w = rng.unitary(p.n);
  for (int k = 0; k < 2; ++k) {
    Matrix x = Matrix::Zero(p.n, p.n);
    Index off = 0;
    for (const auto& blk : p.blocks) {
      const Matrix xi = rng.gaussian(blk.block_dim, blk.block_dim);
      for (Index c = 0; c < blk.multiplicity; ++c) {
        x.block(off, off, blk.block_dim, blk.block_dim) = xi;
        off += blk.block_dim;
      }
    }
    p.generators.push_back(w * x * w.adjoint());
  }
  return p;
}

}  // namespace testing_support
