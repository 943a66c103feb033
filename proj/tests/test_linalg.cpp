#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "waveflow/errors.hpp"
#include "waveflow/linalg.hpp"

using namespace waveflow;

namespace {

ComplexMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected waveflow::Error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("hermitian_eig small cases") {
  SUBCASE("identity") {
    const Eigensystem es = hermitian_eig(HermitianMatrix::identity(3));
    for (Index k = 0; k < 3; ++k) CHECK(es.eigenvalues(k) == doctest::Approx(1.0));
    CHECK(oracle::max_abs(es.eigenvectors.adjoint() * es.eigenvectors -
                          ComplexMatrix::Identity(3, 3)) < 1e-12);
  }
  SUBCASE("diagonal") {
    const Eigensystem es = hermitian_eig(HermitianMatrix(mat2(2.0, 0.0, 0.0, -1.0)));
    CHECK(es.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues(1) == doctest::Approx(2.0));
    CHECK(std::abs(es.eigenvectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(es.eigenvectors(0, 1)) == doctest::Approx(1.0));
  }
  SUBCASE("coupler") {
    const Eigensystem es = hermitian_eig(HermitianMatrix(mat2(0.0, 1.0, 1.0, 0.0)));
    CHECK(es.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues(1) == doctest::Approx(1.0));
    ComplexVector minus(2), plus(2);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(std::abs(minus.dot(es.eigenvectors.col(0))) == doctest::Approx(1.0));
    CHECK(std::abs(plus.dot(es.eigenvectors.col(1))) == doctest::Approx(1.0));
  }
}

TEST_CASE("hermitian_eig invariants on random matrices") {
  std::mt19937_64 rng(11);
  for (Index n = 1; n <= 12; ++n) {
    const ComplexMatrix a = oracle::random_hermitian(rng, n, 2.0);
    const Eigensystem es = hermitian_eig(HermitianMatrix(a));
    const ComplexMatrix& v = es.eigenvectors;
    CHECK(oracle::max_abs(v.adjoint() * v - ComplexMatrix::Identity(n, n)) < 1e-10);
    for (Index k = 0; k < n; ++k) {
      CHECK(oracle::max_abs(a * v.col(k) - es.eigenvalues(k) * v.col(k)) < 1e-9);
      if (k > 0) CHECK(es.eigenvalues(k - 1) <= es.eigenvalues(k));
    }
    CHECK(oracle::max_abs(v * es.eigenvalues.cast<cplx>().asDiagonal() * v.adjoint() - a) < 1e-9);
  }
}

TEST_CASE("HermitianMatrix rejects bad input") {
  CHECK(kind_of([] { HermitianMatrix(mat2(0.0, 1.0, 0.5, 0.0)); }) ==
        ErrorKind::NonHermitianInput);
  CHECK(kind_of([] { HermitianMatrix(ComplexMatrix::Zero(2, 3)); }) ==
        ErrorKind::NonHermitianInput);
  CHECK(kind_of([] { HermitianMatrix(mat2(NAN, 0.0, 0.0, 0.0)); }) == ErrorKind::NonFinite);
  CHECK(kind_of([] { HermitianMatrix(ComplexMatrix(0, 0)); }) == ErrorKind::DimensionMismatch);
  CHECK_NOTHROW(HermitianMatrix(mat2(1.0, cplx(0, 1e-13), cplx(0, 0), 1.0)));
}

TEST_CASE("expi closed forms") {
  std::mt19937_64 rng(3);
  const ComplexMatrix h = oracle::random_hermitian(rng, 4);
  CHECK(oracle::max_abs(expi(HermitianMatrix(h), 0.0) - ComplexMatrix::Identity(4, 4)) < 1e-12);

  const ComplexMatrix d = mat2(0.7, 0.0, 0.0, -1.3);
  const ComplexMatrix ud = expi(HermitianMatrix(d), 2.5);
  CHECK(std::abs(ud(0, 0) - std::polar(1.0, 0.7 * 2.5)) < 1e-14);
  CHECK(std::abs(ud(1, 1) - std::polar(1.0, -1.3 * 2.5)) < 1e-14);
  CHECK(std::abs(ud(0, 1)) < 1e-15);

  const double kappa = 1.0, t = 0.83;
  const ComplexMatrix u = expi(HermitianMatrix(mat2(0.0, kappa, kappa, 0.0)), t);
  const ComplexMatrix expected = mat2(std::cos(kappa * t), cplx(0, std::sin(kappa * t)),
                                      cplx(0, std::sin(kappa * t)), std::cos(kappa * t));
  CHECK(oracle::max_abs(u - expected) < 1e-14);
}

TEST_CASE("expi properties on random Hermitian matrices") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(-3.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + trial % 12;
    const HermitianMatrix h(oracle::random_hermitian(rng, n));
    const double t1 = ut(rng), t2 = ut(rng);
    const ComplexMatrix u1 = expi(h, t1);
    CHECK(unitarity_defect(u1) < 1e-10);
    CHECK(oracle::max_abs(u1 * expi(h, -t1) - ComplexMatrix::Identity(n, n)) < 1e-10);
    CHECK(oracle::max_abs(expi(h, t1 + t2) - u1 * expi(h, t2)) < 1e-9);
    CHECK(oracle::max_abs(u1 - oracle::expi_taylor(h.matrix(), t1)) < 1e-9);
  }
}

TEST_CASE("trace_norm") {
  CHECK(trace_norm(HermitianMatrix::zero(3)) == 0.0);
  CHECK(trace_norm(HermitianMatrix(mat2(0.5, 0.0, 0.0, -0.5))) == doctest::Approx(1.0));
  // |H><H| - |V><V| and |P><P| - |M><M| both have eigenvalues +-1.
  CHECK(trace_norm(HermitianMatrix(mat2(1.0, 0.0, 0.0, -1.0))) == doctest::Approx(2.0));
  CHECK(trace_norm(HermitianMatrix(mat2(0.0, 1.0, 1.0, 0.0))) == doctest::Approx(2.0));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 8;
    const ComplexMatrix a = oracle::random_hermitian(rng, n);
    const double tn = trace_norm(HermitianMatrix(a));
    CHECK(tn >= std::abs(a.trace().real()) - 1e-12);
    CHECK(tn == doctest::Approx(oracle::trace_norm_svd(a)).epsilon(1e-12));
  }
}

TEST_CASE("tensor follows the system-major convention") {
  CHECK(oracle::max_abs(tensor(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(5, 5)) -
                        ComplexMatrix::Identity(10, 10)) == 0.0);

  const ComplexMatrix ph = mat2(1.0, 0.0, 0.0, 0.0);
  for (Index m = 0; m < 5; ++m) {
    ComplexMatrix pm = ComplexMatrix::Zero(5, 5);
    pm(m, m) = 1.0;
    const ComplexMatrix j = tensor(ph, pm);
    CHECK(j(m, m) == cplx(1.0));
    CHECK(j.cwiseAbs().sum() == 1.0);
  }

  const ComplexMatrix sz_i = tensor(mat2(1.0, 0.0, 0.0, -1.0), ComplexMatrix::Identity(2, 2));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 1.0, 1.0, -1.0, -1.0;
  CHECK(oracle::max_abs(sz_i - expected) == 0.0);
}

TEST_CASE("partial_trace") {
  std::mt19937_64 rng(21);
  SUBCASE("product states factor") {
    for (Index m = 1; m <= 6; ++m) {
      const ComplexMatrix rs = oracle::random_density(rng, 2);
      const ComplexMatrix re = oracle::random_density(rng, m);
      const HermitianMatrix joint(tensor(rs, re));
      CHECK(oracle::max_abs(partial_trace(joint, {2, m}, Keep::System).matrix() - rs) < 1e-12);
      CHECK(oracle::max_abs(partial_trace(joint, {2, m}, Keep::Environment).matrix() - re) < 1e-12);
    }
  }
  SUBCASE("Bell state") {
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const HermitianMatrix rho(bell * bell.adjoint());
    CHECK(oracle::max_abs(partial_trace(rho, {2, 2}, Keep::System).matrix() -
                          0.5 * ComplexMatrix::Identity(2, 2)) < 1e-15);
  }
  SUBCASE("trace preserved; scaled factors for positive matrices") {
    for (int trial = 0; trial < 20; ++trial) {
      const Index ds = 1 + trial % 3, de = 1 + trial % 5;
      ComplexMatrix a = oracle::random_density(rng, ds) * 1.7;
      ComplexMatrix b = oracle::random_density(rng, de) * 0.6;
      const HermitianMatrix joint(tensor(a, b));
      CHECK(oracle::max_abs(partial_trace(joint, {ds, de}, Keep::System).matrix() -
                            a * b.trace()) < 1e-12);
      CHECK(oracle::max_abs(partial_trace(joint, {ds, de}, Keep::Environment).matrix() -
                            b * a.trace()) < 1e-12);
      const HermitianMatrix r(oracle::random_density(rng, ds * de));
      CHECK(partial_trace(r, {ds, de}, Keep::System).matrix().trace().real() ==
            doctest::Approx(1.0).epsilon(1e-12));
      CHECK(partial_trace(r, {ds, de}, Keep::Environment).matrix().trace().real() ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK(kind_of([] { partial_trace(HermitianMatrix::identity(6), {2, 2}, Keep::System); }) ==
          ErrorKind::DimensionMismatch);
  }
}
