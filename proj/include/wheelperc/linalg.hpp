#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wheelperc/rational.hpp"

namespace wheelperc {

template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<T> a;
  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
};

using QMatrix = Matrix<BigRational>;
using ZMatrix = Matrix<BigInt>;

// Square integer matrix stored by rows; entries (col, value), value != 0
struct SparseIntMatrix {
  int dim = 0;
  std::vector<std::vector<std::pair<int, long>>> rows;
  long at(int i, int j) const;
};

QMatrix multiply(const QMatrix& x, const QMatrix& y);
ZMatrix multiply(const ZMatrix& x, const ZMatrix& y);
QMatrix to_rational(const SparseIntMatrix& m);

// Unique v with v*M = 0 and sum(v) = 1; throws std::runtime_error when the
// left nullspace is not one-dimensional.
std::vector<BigRational> nullspace_1d(const QMatrix& m);
std::vector<BigRational> nullspace_1d(const SparseIntMatrix& m);
std::vector<BigRational> nullspace_1d_bareiss(const QMatrix& m);
std::vector<BigRational> nullspace_1d_modular(const SparseIntMatrix& m);

// Inverse of a matrix that is unit triangular up to a simultaneous
// permutation of rows and columns.
ZMatrix invert_unitriangular(const ZMatrix& c);

// Univariate polynomial, ascending coefficients.
using UPoly = std::vector<BigRational>;

UPoly lagrange_interpolate(const std::vector<std::pair<BigRational, BigRational>>& points);
BigRational poly_eval(const UPoly& p, const BigRational& x);
void poly_trim(UPoly& p);
UPoly poly_mul(const UPoly& x, const UPoly& y);
std::string poly_to_string(const UPoly& p, const std::string& var);

// Rational reconstruction of u mod m; false if none within sqrt(m/2)
bool rational_reconstruct(const BigInt& u, const BigInt& m, BigRational& out);

}  // namespace wheelperc
