#include "hyperpol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hyperpol/kernels.hpp"

namespace hyperpol {

namespace {

void check_dim(std::size_t dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("CMatrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

CMatrix::CMatrix(std::size_t dim, std::initializer_list<cplx> row_major) : CMatrix(dim) {
  if (row_major.size() != dim * dim) {
    throw std::invalid_argument("CMatrix initializer must hold dim*dim entries");
  }
  std::copy(row_major.begin(), row_major.end(), data_.begin());
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::initializer_list<cplx> diag) {
  CMatrix m(diag.size());
  std::size_t i = 0;
  for (const cplx& d : diag) {
    m(i, i) = d;
    ++i;
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t k = 0; k < dim_ * dim_; ++k) data_[k] += other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t k = 0; k < dim_ * dim_; ++k) data_[k] -= other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx scale) {
  for (std::size_t k = 0; k < dim_ * dim_; ++k) data_[k] *= scale;
  return *this;
}

bool operator==(const CMatrix& a, const CMatrix& b) {
  if (a.dim_ != b.dim_) return false;
  return std::equal(a.data_.begin(), a.data_.begin() + a.dim_ * a.dim_, b.data_.begin());
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, cplx scale) { return a *= scale; }
CMatrix operator*(cplx scale, CMatrix a) { return a *= scale; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "matrix product");
  CMatrix out(a.dim());
  if (a.dim() == 4) {
    kernels::active().matmul4(a.entries().data(), b.entries().data(), out.entries().data());
    return out;
  }
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("kron expects two 2x2 factors");
  }
  CMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) worst = std::max(worst, std::abs(ea[k] - eb[k]));
  return worst;
}

double operator_distance(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "operator_distance");
  double sum = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) sum += std::norm(ea[k] - eb[k]);
  return std::sqrt(sum);
}

double unitarity_defect(const CMatrix& u) {
  return max_abs_diff(u.adjoint() * u, CMatrix::identity(u.dim()));
}

double hermiticity_defect(const CMatrix& h) { return max_abs_diff(h, h.adjoint()); }

HermitianGenerator::HermitianGenerator(const CMatrix& matrix)
    : matrix_(matrix), defect_(hyperpol::hermiticity_defect(matrix)) {
  if (!(defect_ <= kHermitianTolerance)) {
    throw std::invalid_argument("generator is not Hermitian (defect " + std::to_string(defect_) + ")");
  }
  // Symmetrize so downstream routines see an exactly Hermitian matrix.
  const std::size_t n = matrix_.dim();
  for (std::size_t i = 0; i < n; ++i) {
    matrix_(i, i) = matrix_(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (matrix_(i, j) + std::conj(matrix_(j, i)));
      matrix_(i, j) = avg;
      matrix_(j, i) = std::conj(avg);
    }
  }
}

EigenDecomposition eigh(const HermitianGenerator& g) {
  const std::size_t n = g.dim();
  CMatrix a = g.matrix();
  EigenDecomposition result{{}, CMatrix::identity(n)};
  CMatrix& v = result.vectors;

  double scale = 0.0;
  for (const cplx& x : a.entries()) scale = std::max(scale, std::abs(x));
  const double threshold = scale * 1e-17;

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= threshold || off == 0.0) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= threshold || mag == 0.0) continue;
        const cplx phase = a(p, q) / mag;  // a_pq = mag * phase
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane; A <- J^dagger A J.
        const cplx j_pp = c;
        const cplx j_pq = s;
        const cplx j_qp = -s * std::conj(phase);
        const cplx j_qq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // A <- A J (columns p, q)
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * j_pp + akq * j_qp;
          a(k, q) = akp * j_pq + akq * j_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A (rows p, q)
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(j_pp) * apk + std::conj(j_qp) * aqk;
          a(q, k) = std::conj(j_pq) * apk + std::conj(j_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * j_pp + vkq * j_qp;
          v(k, q) = vkp * j_pq + vkq * j_qq;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) result.values[i] = a(i, i).real();
  return result;
}

CMatrix hermitian_expm(const HermitianGenerator& g, double t) {
  const std::size_t n = g.dim();
  if (t == 0.0) return CMatrix::identity(n);
  const CMatrix& h = g.matrix();

  if (n == 2) {
    // H = a0 I + a . sigma
    const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double ax = h(1, 0).real();
    const double ay = h(1, 0).imag();
    const double norm = std::sqrt(ax * ax + ay * ay + az * az);
    const cplx global = std::polar(1.0, -a0 * t);
    const double c = std::cos(norm * t);
    const double s = norm > 0.0 ? std::sin(norm * t) / norm : t;
    const cplx mi(0.0, -1.0);
    CMatrix u(2, {c + mi * s * az, mi * s * cplx(ax, -ay), mi * s * cplx(ax, ay), c - mi * s * az});
    return u * global;
  }

  const EigenDecomposition eig = eigh(g);
  CMatrix scaled = eig.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx phase = std::polar(1.0, -eig.values[j] * t);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= phase;
  }
  return scaled * eig.vectors.adjoint();
}

namespace spin {
CMatrix sx() { return CMatrix(2, {0.0, 0.5, 0.5, 0.0}); }
CMatrix sy() { return CMatrix(2, {0.0, cplx(0.0, -0.5), cplx(0.0, 0.5), 0.0}); }
CMatrix sz() { return CMatrix(2, {0.5, 0.0, 0.0, -0.5}); }
CMatrix id2() { return CMatrix::identity(2); }
}  // namespace spin

}  // namespace hyperpol
