// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "gsep/linalg.hpp"

using namespace gsep;

TEST_CASE("real determinant matches closed forms") {
  Mat a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 3;
  a(1, 1) = 4;
  CHECK(lu_determinant(a) == doctest::Approx(-2.0));

  Mat p(2, 2);
  p(0, 1) = 1;
  p(1, 0) = 1;
  CHECK(lu_determinant(p) == doctest::Approx(-1.0));  // one row swap

  Mat b(3, 3);
  b(0, 0) = 2;
  b(0, 1) = -1;
  b(1, 0) = -1;
  b(1, 1) = 2;
  b(1, 2) = -1;
  b(2, 1) = -1;
  b(2, 2) = 2;
  CHECK(lu_determinant(b) == doctest::Approx(4.0));

  Mat s(2, 2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  CHECK(lu_determinant(s) == doctest::Approx(0.0));
}

TEST_CASE("complex determinant of a Hermitian matrix is real") {
  CMat m(2, 2);
  m(0, 0) = 2.0;
  m(0, 1) = cxd(0, 1);
  m(1, 0) = cxd(0, -1);
  m(1, 1) = 2.0;
  const cxd det = lu_determinant(m);
  CHECK(det.real() == doctest::Approx(3.0));
  CHECK(std::abs(det.imag()) < 1e-15);
}

TEST_CASE("inverse reconstructs the identity") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n : {1, 3, 6}) {
    Mat a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = u(rng);
      a(i, i) += n;  // diagonally dominant, comfortably invertible
    }
    const Mat prod = a * inverse(a);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  }

  Mat singular(2, 2);
  singular(0, 0) = 1;
  singular(1, 1) = 0;
  CHECK_THROWS_AS(inverse(singular), std::invalid_argument);
}

TEST_CASE("Hermitian eigenvalues: known spectra") {
  CMat d(3, 3);
  d(0, 0) = 5;
  d(1, 1) = -2;
  d(2, 2) = 1;
  const auto eig = hermitian_eigenvalues(d);
  CHECK(eig[0] == doctest::Approx(-2));
  CHECK(eig[1] == doctest::Approx(1));
  CHECK(eig[2] == doctest::Approx(5));

  CMat pauli(2, 2);
  pauli(0, 1) = cxd(0, 1);
  pauli(1, 0) = cxd(0, -1);
  const auto pe = hermitian_eigenvalues(pauli);
  CHECK(pe[0] == doctest::Approx(-1));
  CHECK(pe[1] == doctest::Approx(1));

  // vacuum covariance plus the commutator shift: eigenvalues 0 and 1, triply
  CMat v(6, 6);
  for (int i = 0; i < 6; ++i) v(i, i) = 0.5;
  for (int i = 0; i < 3; ++i) {
    v(i, 3 + i) = cxd(0, -0.5);
    v(3 + i, i) = cxd(0, 0.5);
  }
  const auto ve = hermitian_eigenvalues(v);
  for (int i = 0; i < 3; ++i) {
    CHECK(ve[static_cast<size_t>(i)] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ve[static_cast<size_t>(3 + i)] == doctest::Approx(1.0));
  }
}

TEST_CASE("Hermitian eigenvalues: trace and determinant identities on random input") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 7;
    CMat m(n, n);
    double trace = 0;
    for (int i = 0; i < n; ++i) {
      m(i, i) = u(rng);
      trace += m(i, i).real();
      for (int j = i + 1; j < n; ++j) {
        m(i, j) = cxd(u(rng), u(rng));
        m(j, i) = std::conj(m(i, j));
      }
    }
    const auto eig = hermitian_eigenvalues(m);
    double sum = 0, product = 1;
    for (double e : eig) {
      sum += e;
      product *= e;
    }
    CHECK(sum == doctest::Approx(trace).epsilon(1e-11));
    CHECK(product == doctest::Approx(lu_determinant(m).real()).epsilon(1e-9));
  }
}
