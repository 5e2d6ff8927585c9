#include "generators.hpp"

#include "dgc/fixtures.hpp"

namespace dgc::testgen {

namespace {

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Scalar random_scalar(Field F, Rng& rng) {
  if (F.characteristic() == 0) return F.from_int(pick(rng, -2, 2));
  return F.from_int(pick(rng, 0, static_cast<int>(F.characteristic()) - 1));
}

CatPtr free_quiver(Field F, Rng& rng, int n) {
  CategoryBuilder b(F, "Free");
  const char* names[] = {"x", "y", "z"};
  for (int i = 0; i < n; ++i) b.add_object(names[i]);
  bool arrow[3][3] = {};
  int deg[3][3] = {};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pick(rng, 0, 2) > 0) {
        arrow[i][j] = true;
        deg[i][j] = pick(rng, -1, 1);
        b.add_morphism(names[i], names[j], std::string("m") + names[i] + names[j], deg[i][j]);
      }
  if (n == 3 && arrow[0][1] && arrow[1][2]) {
    b.add_morphism("x", "z", "myz.mxy", deg[0][1] + deg[1][2]);
    b.set_composition("myz", "mxy", "myz.mxy", F.one());
  }
  return b.build();
}

bool fits(const Bimodule& T, int max_total) { return T.total_dim() <= max_total && T.total_dim() > 0; }

}  // namespace

Matrix random_matrix(Field F, Rng& rng, int rows, int cols) {
  Matrix m(F, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_scalar(F, rng);
  return m;
}

Complex random_complex(Field F, Rng& rng, int max_dim) {
  std::map<int, int> dims;
  int left = std::max(1, max_dim);
  for (int n = -1; n <= 1; ++n) {
    int k = pick(rng, 0, std::min(2, left));
    if (k) dims[n] = k;
    left -= k;
  }
  if (dims.empty()) dims[0] = 1;
  auto dim = [&](int n) { return dims.count(n) ? dims[n] : 0; };
  std::map<int, Matrix> diffs;
  Matrix d0 = random_matrix(F, rng, dim(0), dim(-1));
  diffs[-1] = d0;
  Cokernel q = cokernel(d0);
  diffs[0] = random_matrix(F, rng, dim(1), q.projection.rows()) * q.projection;
  return Complex::from_blocks(F, dims, diffs);
}

CatPtr random_category(Field F, Rng& rng, int max_objects) {
  switch (pick(rng, 0, 2)) {
    case 0: {
      std::vector<CatPtr> zoo = {fixtures::q2(F), fixtures::dual_numbers(F), fixtures::truncated_odd(F), fixtures::contractible_pair(F),
                                 fixtures::homotopy_pair(F)};
      return zoo[pick(rng, 0, static_cast<int>(zoo.size()) - 1)];
    }
    case 1: {
      int n = pick(rng, 1, std::min(2, max_objects));
      std::vector<Complex> objs;
      int budget = 3;
      for (int i = 0; i < n; ++i) {
        objs.push_back(random_complex(F, rng, std::max(1, budget - (n - 1 - i))));
        budget -= objs.back().dim();
      }
      return fixtures::complexes_category(F, objs);
    }
    default:
      return free_quiver(F, rng, pick(rng, 1, std::min(3, max_objects)));
  }
}

BimoduleMorphism random_closed_morphism(const Bimodule& S, const Bimodule& T, Rng& rng) {
  NatComplex N = nat_complex(S, T);
  const Complex& C = N.cx();
  const Field F = S.field();
  Vector v(C.dim(), F.zero());
  if (C.dim(0) > 0) {
    Matrix Z = kernel_basis(C.diff(0));
    for (int j = 0; j < Z.cols(); ++j) {
      Scalar c = random_scalar(F, rng);
      for (int i = 0; i < Z.rows(); ++i) v[C.offset(0) + i] += c * Z(i, j);
    }
  }
  return N.morphism(v, 0);
}

namespace {

Bimodule build(const std::vector<Bimodule>& blocks, Rng& rng, int max_total) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<Bimodule> parts;
    const int k = pick(rng, 1, 2);
    for (int i = 0; i < k; ++i) {
      Bimodule b = blocks[pick(rng, 0, static_cast<int>(blocks.size()) - 1)];
      int s = pick(rng, -1, 1);
      parts.push_back(s ? shift(b, s) : b);
    }
    Bimodule T = parts.size() == 1 ? parts[0] : direct_sum(parts);
    if (pick(rng, 0, 1)) {
      Bimodule src = blocks[pick(rng, 0, static_cast<int>(blocks.size()) - 1)];
      if (src.total_dim() + T.total_dim() <= max_total) T = cone(random_closed_morphism(src, T, rng)).cone;
    }
    if (fits(T, max_total)) return T;
  }
  Bimodule best = blocks[0];
  for (const Bimodule& b : blocks)
    if (b.total_dim() > 0 && (best.total_dim() == 0 || b.total_dim() < best.total_dim())) best = b;
  return best;
}

}  // namespace

Bimodule random_bimodule(const CatPtr& A, Rng& rng, int max_total) {
  std::vector<Bimodule> blocks = {diagonal(A)};
  for (int a = 0; a < A->size(); ++a)
    for (int b = 0; b < A->size(); ++b) blocks.push_back(external_tensor(representable_left(A, a), representable_right(A, b)));
  return build(blocks, rng, max_total);
}

Bimodule random_right_module(const CatPtr& A, Rng& rng, int max_total) {
  std::vector<Bimodule> blocks;
  for (int a = 0; a < A->size(); ++a) blocks.push_back(representable_right(A, a));
  return build(blocks, rng, max_total);
}

Bimodule random_left_module(const CatPtr& A, Rng& rng, int max_total) {
  std::vector<Bimodule> blocks;
  for (int a = 0; a < A->size(); ++a) blocks.push_back(representable_left(A, a));
  return build(blocks, rng, max_total);
}

}  // namespace dgc::testgen
