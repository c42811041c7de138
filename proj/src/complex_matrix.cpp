#include "zeno/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zeno {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("ComplexMatrix: dim must be 2 or 3");
}

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<cplx> row_major) : ComplexMatrix(dim) {
  if (row_major.size() != static_cast<std::size_t>(dim * dim))
    throw std::invalid_argument("ComplexMatrix: expected dim*dim entries");
  int k = 0;
  for (const cplx& z : row_major) {
    (*this)(k / dim, k % dim) = z;
    ++k;
  }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::rotation2(double eps) {
  const double c = std::cos(eps), s = std::sin(eps);
  return ComplexMatrix(2, {c, s, -s, c});
}

cplx ComplexMatrix::det() const {
  const auto& m = *this;
  if (dim_ == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double d = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) d = std::max(d, std::abs((*this)(i, j) - o(i, j)));
  return d;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) t(i, j) = (*this)(j, i);
  return t;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix product: dimension mismatch");
  const int n = a.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  return r;
}

double Vec::norm2() const {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += std::norm(v[i]);
  return s;
}

Vec operator*(const ComplexMatrix& m, const Vec& x) {
  if (m.dim() != x.dim) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vec y;
  y.dim = x.dim;
  for (int i = 0; i < x.dim; ++i) {
    cplx acc = 0.0;
    for (int k = 0; k < x.dim; ++k) acc += m(i, k) * x.v[k];
    y.v[i] = acc;
  }
  return y;
}

ComplexMatrix mat_power(const ComplexMatrix& m, std::uint64_t n) {
  ComplexMatrix result = ComplexMatrix::identity(m.dim());
  ComplexMatrix base = m;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

}  // namespace zeno
