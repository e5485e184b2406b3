#pragma once

#include <vector>

#include "localpt/exact.hpp"
#include "localpt/series.hpp"

namespace localpt {

using RatMatrix = std::vector<std::vector<RatFunc>>;
using SeriesMatrix = std::vector<std::vector<TruncSeries>>;

RatMatrix identity_matrix(size_t n);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatMatrix transpose(const RatMatrix& a);

// Fraction-free Bareiss elimination with row pivoting.
RatFunc determinant(RatMatrix m);
// Gauss-Jordan; throws SingularMatrix.
RatMatrix inverse(const RatMatrix& m);

template <class M>
M submatrix(const M& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  M out(rows.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c : cols) out[r].push_back(m[rows[r]][c]);
  return out;
}

SeriesMatrix multiply(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix identity_matrix(const VarSetPtr& vs, size_t n);

// Elimination with invertible pivots, falling back to cofactor expansion when no pivot is a unit.
TruncSeries determinant(const SeriesMatrix& m, const VarSetPtr& vs);
// Cofactor expansion with memoized column subsets; valid over any commutative ring of series.
TruncSeries determinant_expansion(const SeriesMatrix& m, const VarSetPtr& vs);
// Requires an invertible determinant; throws NonInvertibleConstantTerm otherwise.
SeriesMatrix inverse(const SeriesMatrix& m);

}  // namespace localpt
