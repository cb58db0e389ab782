#pragma once

#include <vector>

#include "ambra/rational.hpp"

namespace ambra {

// Integer polynomials, lowest-degree first, no trailing zeros.
using ZPoly = std::vector<Integer>;

// Factors a monic squarefree integer polynomial of degree >= 1 into monic
// irreducible integer factors (Zassenhaus: modular factorization, Hensel
// lifting, subset recombination). Deterministic.
std::vector<ZPoly> factor_squarefree_monic_z(const ZPoly& f);

}  // namespace ambra
