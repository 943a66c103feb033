#include "waveflow/linalg.hpp"

#include <cmath>
#include <string>

#include "waveflow/errors.hpp"

namespace waveflow {

void require_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is empty");
  }
  for (Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::NonFinite, std::string(what) + " has a non-finite entry");
    }
  }
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
  require_finite(m, "hermitian matrix");
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NonHermitianInput,
                "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    throw Error(ErrorKind::NonHermitianInput,
                "max |A - A^dagger| = " + std::to_string(asym));
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw Error(ErrorKind::DimensionMismatch, "operand dims differ");
  return HermitianMatrix(m_ - other.m_);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw Error(ErrorKind::DimensionMismatch, "operand dims differ");
  return HermitianMatrix(m_ + other.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(m_ * s); }

Eigensystem hermitian_eig(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "self-adjoint eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expi(const Eigensystem& es, double t) {
  const Index n = es.eigenvalues.size();
  ComplexVector phases(n);
  for (Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, es.eigenvalues(k) * t);
  return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

ComplexMatrix expi(const HermitianMatrix& m, double t) { return expi(hermitian_eig(m), t); }

double trace_norm(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "self-adjoint eigensolver did not converge");
  }
  return solver.eigenvalues().cwiseAbs().sum();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianMatrix partial_trace(const HermitianMatrix& joint, Dims dims, Keep keep) {
  const Index ds = dims.system;
  const Index de = dims.environment;
  if (ds < 1 || de < 1 || joint.dim() != ds * de) {
    throw Error(ErrorKind::DimensionMismatch,
                "joint dim " + std::to_string(joint.dim()) + " != " + std::to_string(ds) +
                    " x " + std::to_string(de));
  }
  const ComplexMatrix& rho = joint.matrix();
  if (keep == Keep::System) {
    ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
    for (Index i = 0; i < ds; ++i)
      for (Index j = 0; j < ds; ++j)
        for (Index e = 0; e < de; ++e) out(i, j) += rho(i * de + e, j * de + e);
    return HermitianMatrix(out);
  }
  ComplexMatrix out = ComplexMatrix::Zero(de, de);
  for (Index a = 0; a < de; ++a)
    for (Index b = 0; b < de; ++b)
      for (Index s = 0; s < ds; ++s) out(a, b) += rho(s * de + a, s * de + b);
  return HermitianMatrix(out);
}

double unitarity_defect(const ComplexMatrix& u) {
  const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace waveflow
