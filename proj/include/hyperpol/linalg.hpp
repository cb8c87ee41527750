#pragma once

// Dense complex matrices of dimension 2 (nuclear spin) and 4 (electron x nuclear).
//
// Basis order for dimension 4 is fixed: |Up,up>, |Up,down>, |Down,up>, |Down,down>,
// electron factor first. Upper-case Up/Down label the electron, lower-case the nucleus.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace hyperpol {

using cplx = std::complex<double>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kIdentityTolerance = 1e-10;

class CMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  explicit CMatrix(std::size_t dim);
  CMatrix(std::size_t dim, std::initializer_list<cplx> row_major);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::initializer_list<cplx> diag);

  std::size_t dim() const { return dim_; }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  std::span<cplx> entries() { return {data_.data(), dim_ * dim_}; }
  std::span<const cplx> entries() const { return {data_.data(), dim_ * dim_}; }

  CMatrix adjoint() const;
  cplx trace() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx scale);

  friend bool operator==(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t dim_;
  std::array<cplx, kMaxDim * kMaxDim> data_{};
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, cplx scale);
CMatrix operator*(cplx scale, CMatrix a);
// Matrix product; dimensions must agree.
CMatrix operator*(const CMatrix& a, const CMatrix& b);

// Tensor product of two 2x2 factors, electron (a) first.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Largest entry magnitude of a - b.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
// Frobenius norm of a - b.
double operator_distance(const CMatrix& a, const CMatrix& b);
// max |(U^dagger U - I)_ij|
double unitarity_defect(const CMatrix& u);
// max |(H - H^dagger)_ij|
double hermiticity_defect(const CMatrix& h);

class HermitianGenerator {
 public:
  // Throws std::invalid_argument when the hermiticity defect exceeds kHermitianTolerance.
  explicit HermitianGenerator(const CMatrix& matrix);

  const CMatrix& matrix() const { return matrix_; }
  double hermiticity_defect() const { return defect_; }
  std::size_t dim() const { return matrix_.dim(); }

 private:
  CMatrix matrix_;
  double defect_;
};

struct EigenDecomposition {
  std::array<double, CMatrix::kMaxDim> values{};
  CMatrix vectors;  // columns are eigenvectors
};

// Cyclic Jacobi diagonalization of a Hermitian matrix.
EigenDecomposition eigh(const HermitianGenerator& g);

// exp(-i G t). Closed form for dimension 2, spectral decomposition for dimension 4.
CMatrix hermitian_expm(const HermitianGenerator& g, double t);

namespace spin {
// Spin-1/2 operators (Pauli / 2) on a single 2-dimensional factor.
CMatrix sx();
CMatrix sy();
CMatrix sz();
CMatrix id2();
}  // namespace spin

}  // namespace hyperpol
