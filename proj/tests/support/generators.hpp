#pragma once

#include <random>

#include "dgc/dgmod.hpp"

namespace dgc::testgen {

using Rng = std::mt19937_64;

Matrix random_matrix(Field F, Rng& rng, int rows, int cols);
/// Random complex concentrated in degrees -1..1 with at most max_dim basis elements.
Complex random_complex(Field F, Rng& rng, int max_dim);
/// One of: a fixture, a full subcategory of complexes, a free category on an acyclic quiver.
CatPtr random_category(Field F, Rng& rng, int max_objects = 3);
/// Sums, shifts and cones of diagonal and external-tensor bimodules with total
/// dimension at most max_total. Always valid.
Bimodule random_bimodule(const CatPtr& A, Rng& rng, int max_total = 12);
/// Random right module over A built the same way from representables.
Bimodule random_right_module(const CatPtr& A, Rng& rng, int max_total = 8);
Bimodule random_left_module(const CatPtr& A, Rng& rng, int max_total = 8);
/// Random closed degree-0 element of Nat(S,T).
BimoduleMorphism random_closed_morphism(const Bimodule& S, const Bimodule& T, Rng& rng);

}  // namespace dgc::testgen
