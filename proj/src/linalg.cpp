#include "localpt/linalg.hpp"

#include <functional>
#include <map>
#include <utility>

namespace localpt {

RatMatrix identity_matrix(size_t n) {
  RatMatrix m(n, std::vector<RatFunc>(n, RatFunc(0)));
  for (size_t i = 0; i < n; ++i) m[i][i] = RatFunc(1);
  return m;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  RatMatrix c(n, std::vector<RatFunc>(p, RatFunc(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < p; ++j)
        if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

RatMatrix transpose(const RatMatrix& a) {
  if (a.empty()) return a;
  RatMatrix t(a[0].size(), std::vector<RatFunc>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

RatFunc determinant(RatMatrix m) {
  size_t n = m.size();
  if (n == 0) return RatFunc(1);
  RatFunc prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return RatFunc(0);
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      m[i][k] = RatFunc(0);
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

RatMatrix inverse(const RatMatrix& m) {
  size_t n = m.size();
  RatMatrix a = m, inv = identity_matrix(n);
  for (size_t k = 0; k < n; ++k) {
    size_t r = k;
    while (r < n && a[r][k].is_zero()) ++r;
    if (r == n) throw SingularMatrix();
    std::swap(a[k], a[r]);
    std::swap(inv[k], inv[r]);
    RatFunc piv = a[k][k].inverse();
    for (size_t j = 0; j < n; ++j) {
      a[k][j] *= piv;
      inv[k][j] *= piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k].is_zero()) continue;
      RatFunc f = a[i][k];
      for (size_t j = 0; j < n; ++j) {
        if (!a[k][j].is_zero()) a[i][j] -= f * a[k][j];
        if (!inv[k][j].is_zero()) inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

SeriesMatrix identity_matrix(const VarSetPtr& vs, size_t n) {
  SeriesMatrix m(n, std::vector<TruncSeries>(n, TruncSeries(vs)));
  for (size_t i = 0; i < n; ++i) m[i][i] = TruncSeries(vs, RatFunc(1));
  return m;
}

SeriesMatrix multiply(const SeriesMatrix& a, const SeriesMatrix& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  VarSetPtr vs = n && k ? a[0][0].varset() : nullptr;
  SeriesMatrix c(n, std::vector<TruncSeries>(p, TruncSeries(vs)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < p; ++j)
        if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

TruncSeries determinant_expansion(const SeriesMatrix& m, const VarSetPtr& vs) {
  size_t n = m.size();
  std::map<uint32_t, TruncSeries> memo;
  // det of rows [n - popcount(cols), n) restricted to column set cols
  std::function<TruncSeries(uint32_t)> rec = [&](uint32_t cols) -> TruncSeries {
    int k = __builtin_popcount(cols);
    if (k == 0) return TruncSeries(vs, RatFunc(1));
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    size_t row = n - k;
    TruncSeries acc(vs);
    int pos = 0;
    for (size_t c = 0; c < n; ++c) {
      if (!(cols >> c & 1)) continue;
      if (!m[row][c].is_zero()) {
        TruncSeries t = m[row][c] * rec(cols & ~(1u << c));
        if (pos % 2) acc -= t;
        else acc += t;
      }
      ++pos;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return rec(n ? (1u << n) - 1 : 0);
}

TruncSeries determinant(const SeriesMatrix& m, const VarSetPtr& vs) {
  size_t n = m.size();
  SeriesMatrix a = m;
  TruncSeries det(vs, RatFunc(1));
  for (size_t k = 0; k < n; ++k) {
    size_t r = k;
    while (r < n && a[r][k].constant_term().is_zero()) ++r;
    if (r == n) return determinant_expansion(m, vs);
    if (r != k) {
      std::swap(a[k], a[r]);
      det = -det;
    }
    det *= a[k][k];
    TruncSeries piv = a[k][k].inverse();
    for (size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      TruncSeries f = a[i][k] * piv;
      for (size_t j = k + 1; j < n; ++j)
        if (!a[k][j].is_zero()) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

SeriesMatrix inverse(const SeriesMatrix& m) {
  size_t n = m.size();
  if (n == 0) return m;
  VarSetPtr vs = m[0][0].varset();
  SeriesMatrix a = m, inv = identity_matrix(vs, n);
  for (size_t k = 0; k < n; ++k) {
    size_t r = k;
    while (r < n && a[r][k].constant_term().is_zero()) ++r;
    if (r == n) throw NonInvertibleConstantTerm("matrix is not invertible over the series ring");
    std::swap(a[k], a[r]);
    std::swap(inv[k], inv[r]);
    TruncSeries piv = a[k][k].inverse();
    for (size_t j = 0; j < n; ++j) {
      a[k][j] = a[k][j] * piv;
      inv[k][j] = inv[k][j] * piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k].is_zero()) continue;
      TruncSeries f = a[i][k];
      for (size_t j = 0; j < n; ++j) {
        if (!a[k][j].is_zero()) a[i][j] -= f * a[k][j];
        if (!inv[k][j].is_zero()) inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

}  // namespace localpt
