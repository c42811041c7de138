#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace zeno {

using cplx = std::complex<double>;

// Small fixed-size complex matrix, dim 2 or 3, row-major storage.
class ComplexMatrix {
 public:
  static constexpr int kMaxDim = 3;

  explicit ComplexMatrix(int dim);
  ComplexMatrix(int dim, std::initializer_list<cplx> row_major);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix rotation2(double eps);

  int dim() const { return dim_; }
  cplx& operator()(int r, int c) { return a_[r * kMaxDim + c]; }
  const cplx& operator()(int r, int c) const { return a_[r * kMaxDim + c]; }

  cplx det() const;
  double max_abs_diff(const ComplexMatrix& o) const;
  ComplexMatrix transpose() const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  int dim_;
  std::array<cplx, kMaxDim * kMaxDim> a_{};
};

// Column vector of amplitudes matching a ComplexMatrix dimension.
struct Vec {
  int dim = 2;
  std::array<cplx, 3> v{};

  double norm2() const;
};

Vec operator*(const ComplexMatrix& m, const Vec& x);

// M^N by binary exponentiation; N = 0 yields the identity.
ComplexMatrix mat_power(const ComplexMatrix& m, std::uint64_t n);

}  // namespace zeno
