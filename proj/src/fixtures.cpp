#include "dgc/fixtures.hpp"

namespace dgc::fixtures {

CatPtr q2(Field F) {
  CategoryBuilder b(F, "Q2");
  b.add_object("a");
  b.add_object("b");
  b.add_morphism("a", "b", "f", 0);
  return b.build();
}

CatPtr dual_numbers(Field F) {
  CategoryBuilder b(F, "D");
  b.add_object("o");
  b.add_morphism("o", "o", "eps", -1);
  return b.build();
}

CatPtr truncated_odd(Field F) {
  CategoryBuilder b(F, "E3");
  b.add_object("o");
  b.add_morphism("o", "o", "e", 1);
  b.add_morphism("o", "o", "ee", 2);
  b.set_composition("e", "e", "ee", F.one());
  return b.build();
}

CatPtr contractible_pair(Field F) {
  CategoryBuilder b(F, "Dd");
  b.add_object("o");
  b.add_morphism("o", "o", "eps", -1);
  b.add_morphism("o", "o", "delta", 0);
  b.set_differential("eps", "delta", F.one());
  return b.build();
}

CatPtr homotopy_pair(Field F) {
  CategoryBuilder b(F, "Hq");
  b.add_object("p");
  b.add_object("q");
  b.add_morphism("p", "q", "u", 0);
  b.add_morphism("q", "p", "v", 0);
  b.add_morphism("q", "q", "s", -1);
  b.add_morphism("q", "q", "t", 0);
  b.set_differential("s", "t", F.one());
  b.set_composition("v", "u", "1_p", F.one());
  b.set_composition("u", "v", "1_q", F.one());
  b.set_composition("u", "v", "t", F.from_int(-1));
  b.set_composition("t", "t", "t", F.one());
  b.set_composition("s", "t", "s", F.one());
  b.set_composition("t", "s", "s", F.one());
  return b.build();
}

CatPtr complexes_category(Field F, const std::vector<Complex>& objects, const std::string& name) {
  const int n = static_cast<int>(objects.size());
  std::vector<HomComplex> H;
  DgCategory::Data D;
  D.field = F;
  D.name = name;
  for (int i = 0; i < n; ++i) D.objects.push_back("V" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      H.push_back(internal_hom(objects[i], objects[j]));
      D.homs.push_back(H.back().cx);
      std::vector<std::string> labels;
      for (auto [y, x] : H.back().units)
        labels.push_back("E" + std::to_string(i) + std::to_string(j) + "(" + std::to_string(y) + "," + std::to_string(x) + ")");
      D.labels.push_back(std::move(labels));
    }
  auto hom = [&](int i, int j) -> const HomComplex& { return H[static_cast<size_t>(i) * n + j]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const HomComplex &ab = hom(a, b), &bc = hom(b, c), &ac = hom(a, c);
        std::vector<Matrix> ms;
        for (auto [y, x] : bc.units) {
          Matrix m(F, ac.cx.dim(), ab.cx.dim());
          for (int k = 0; k < ab.cx.dim(); ++k) {
            auto [y2, x2] = ab.units[k];
            if (y2 == x) m(ac.at(y, x2), k) = F.one();
          }
          ms.push_back(std::move(m));
        }
        D.lmul.push_back(std::move(ms));
      }
  for (int i = 0; i < n; ++i) D.ids.push_back(hom(i, i).coords(Matrix::identity(F, objects[i].dim())));
  return std::make_shared<const DgCategory>(std::move(D));
}

CatPtr point(Field F, const std::string& object) {
  CategoryBuilder b(F, "pt(" + object + ")");
  b.add_object(object);
  return b.build();
}

DgFunctor collapse(const CatPtr& Q2, const CatPtr& B) {
  const Field F = Q2->field();
  std::vector<Matrix> maps;
  for (int x = 0; x < Q2->size(); ++x)
    for (int y = 0; y < Q2->size(); ++y) {
      Matrix m(F, 1, Q2->hom(x, y).dim());
      for (int i = 0; i < m.cols(); ++i) m(0, i) = F.one();
      maps.push_back(m);
    }
  return DgFunctor(Q2, B, std::vector<int>(Q2->size(), 0), std::move(maps), "F");
}

DgFunctor inclusion(const CatPtr& sub, const CatPtr& Q2) {
  const int o = Q2->index_of(sub->object(0));
  Matrix m(Q2->field(), Q2->hom(o, o).dim(), 1);
  for (int i = 0; i < m.rows(); ++i) m(i, 0) = Q2->id(o)[i];
  return DgFunctor(sub, Q2, {o}, {m}, "G");
}

std::vector<Matrix> collapse_adjunction(const DgFunctor& F, const DgFunctor& G) {
  const DgCategory& A = *F.source();
  const int gb = G.on_object(0);
  std::vector<Matrix> phi;
  for (int x = 0; x < A.size(); ++x) {
    // hom(Fx, b) = k·1_b, hom(x, b) is one-dimensional, spanned by f or 1_b
    Matrix m(A.field(), A.hom(x, gb).dim(), 1);
    m(0, 0) = A.field().one();
    phi.push_back(m);
  }
  return phi;
}

}  // namespace dgc::fixtures
