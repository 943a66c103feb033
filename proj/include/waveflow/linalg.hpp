#pragma once

// Dense complex linear algebra for the polarization (system) x path
// (environment) problem. Matrices stay small (2M <= ~100), so everything is
// dense and eigendecomposition based.
//
// Index convention for joint operators: the system factor comes first, i.e.
// joint index = system_index * dim_E + env_index. tensor() and
// partial_trace() both follow it.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace waveflow {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kEigenTol = 1e-10;

// Throws NonFinite if any entry is NaN/Inf, DimensionMismatch if empty.
void require_finite(const ComplexMatrix& m, const char* what);

// A square matrix equal to its conjugate transpose within kHermitianTol
// per entry. The stored matrix is exactly symmetrized on construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m, double tol = kHermitianTol);

  static HermitianMatrix zero(Index dim);
  static HermitianMatrix identity(Index dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  cplx operator()(Index r, Index c) const { return m_(r, c); }

  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator*(double s) const;

 private:
  ComplexMatrix m_;
};

struct Eigensystem {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns orthonormal
};

Eigensystem hermitian_eig(const HermitianMatrix& m);

// exp(+i t m) = V diag(e^{i lambda_k t}) V^dagger.
ComplexMatrix expi(const Eigensystem& es, double t);
ComplexMatrix expi(const HermitianMatrix& m, double t);

// Sum of absolute eigenvalues.
double trace_norm(const HermitianMatrix& m);

// Kronecker product a (x) b, system-major.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Keep { System, Environment };

struct Dims {
  Index system;
  Index environment;
};

HermitianMatrix partial_trace(const HermitianMatrix& joint, Dims dims, Keep keep);

// max_{ij} |(U^dagger U - I)_{ij}|
double unitarity_defect(const ComplexMatrix& u);

}  // namespace waveflow
