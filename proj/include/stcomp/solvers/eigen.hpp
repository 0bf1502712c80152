#pragma once

#include "stcomp/types.hpp"

namespace stcomp {

struct EigPair {
  double value = 0.0;
  CVec vector;
};

// Largest eigenpair of a Hermitian matrix. Throws NotHermitian.
EigPair top_eigpair(const CMat& m);

// lambda_max / trace for a Hermitian PSD matrix.
double rank_one_ratio(const CMat& m);

}  // namespace stcomp
