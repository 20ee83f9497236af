// Copyright 2026 The qbc3sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qbc3/linalg.hpp"
#include "qbc3/rng.hpp"

using namespace qbc3;

namespace {

constexpr double kSqrt2Inv = 0.7071067811865475244;

VectorC ket0() { return VectorC{1.0, 0.0}; }
VectorC ket1() { return VectorC{0.0, 1.0}; }
VectorC ket_plus() { return VectorC{cplx(kSqrt2Inv, 0.0), cplx(kSqrt2Inv, 0.0)}; }

MatrixC sigma_z() { return MatrixC(2, 2, {1.0, 0.0, 0.0, -1.0}); }

MatrixC random_hermitian(int dim, SplitMix64& rng) {
  MatrixC a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    a(i, i) = cplx(2.0 * rng.uniform() - 1.0, 0.0);
    for (int j = i + 1; j < dim; ++j) {
      cplx z(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
      a(i, j) = z;
      a(j, i) = std::conj(z);
    }
  }
  return a;
}

MatrixC random_density(int dim, SplitMix64& rng) {
  MatrixC g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  MatrixC rho = g * g.dagger();
  cplx tr = rho.trace();
  return cplx(1.0 / tr.real(), 0.0) * rho;
}

VectorC random_unit(int dim, SplitMix64& rng) {
  VectorC v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  return v.normalized();
}

// Test-only oracle: complex cyclic Jacobi eigensolver. Slow and simple, and
// entirely independent of the production herm_eig path.
std::vector<double> jacobi_eigenvalues(MatrixC a, int sweeps = 60) {
  int n = a.rows;
  for (int s = 0; s < sweeps; ++s) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-18) continue;
        // Unitary 2x2 rotation annihilating a(p, q).
        double app = a(p, p).real(), aqq = a(q, q).real();
        cplx apq = a(p, q);
        double phi = 0.5 * std::atan2(2.0 * std::abs(apq), app - aqq);
        double c = std::cos(phi);
        cplx phase = apq / std::abs(apq);
        cplx s_r = std::sin(phi) * phase;
        for (int k = 0; k < n; ++k) {
          cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + std::conj(s_r) * akq;
          a(k, q) = -s_r * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + s_r * aqk;
          a(q, k) = -std::conj(s_r) * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> evs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) evs[static_cast<size_t>(i)] = a(i, i).real();
  std::sort(evs.begin(), evs.end(), std::greater<>());
  return evs;
}

}  // namespace

TEST_CASE("kron identity and diagonal cases") {
  MatrixC i4 = kron(MatrixC::identity(2), MatrixC::identity(2));
  CHECK(max_abs_diff(i4, MatrixC::identity(4)) == 0.0);

  MatrixC zi = kron(sigma_z(), MatrixC::identity(2));
  MatrixC expected(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  expected(2, 2) = -1.0;
  expected(3, 3) = -1.0;
  CHECK(max_abs_diff(zi, expected) == 0.0);
}

TEST_CASE("kron of rank-1 projectors hits a single entry") {
  MatrixC p = kron(MatrixC::projector(ket0()), MatrixC::projector(ket1()));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double want = (i == 1 && j == 1) ? 1.0 : 0.0;
      CHECK(std::abs(p(i, j) - cplx(want, 0.0)) == 0.0);
    }
}

TEST_CASE("kron refuses registers beyond the cap") {
  MatrixC big = MatrixC::identity(128);
  MatrixC other = MatrixC::identity(64);
  CHECK_THROWS_AS(kron(big, other), RegisterTooLarge);
  CHECK_THROWS_WITH_AS(kron(big, other), doctest::Contains("register too large"),
                       RegisterTooLarge);
}

TEST_CASE("herm_eig on sigma_z and the maximally mixed state") {
  auto sys = herm_eig(sigma_z());
  CHECK(sys.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sys.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));

  auto mixed = herm_eig(0.5 * MatrixC::identity(2));
  CHECK(mixed.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mixed.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("herm_eig on a difference of orthogonal circle-state projectors") {
  // |psi(0)> and |psi(pi)> are orthogonal, so the difference has eigenvalues 1, -1.
  VectorC a{cplx(kSqrt2Inv, 0.0), cplx(kSqrt2Inv, 0.0)};
  VectorC b{cplx(kSqrt2Inv, 0.0), cplx(-kSqrt2Inv, 0.0)};
  auto sys = herm_eig(MatrixC::projector(a) - MatrixC::projector(b));
  CHECK(sys.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sys.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  MatrixC bad(2, 2, {0.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_AS(herm_eig(bad), Error);
  CHECK_THROWS_AS(trace_norm(bad), Error);
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
  SplitMix64 rng(101);
  for (int dim : {2, 3, 5, 8, 16, 33, 64}) {
    MatrixC a = random_hermitian(dim, rng);
    auto sys = herm_eig(a);
    MatrixC rebuilt(dim, dim);
    for (int k = 0; k < dim; ++k) {
      const VectorC& v = sys.eigenvectors[static_cast<size_t>(k)];
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          rebuilt(i, j) += sys.eigenvalues[static_cast<size_t>(k)] * v[i] * std::conj(v[j]);
    }
    CHECK(max_abs_diff(rebuilt, a) <= 1e-8);

    // descending order and orthonormal vectors
    for (size_t k = 1; k < sys.eigenvalues.size(); ++k)
      CHECK(sys.eigenvalues[k] <= sys.eigenvalues[k - 1] + 1e-14);
    for (int p = 0; p < dim; ++p)
      for (int q = 0; q < dim; ++q) {
        cplx ip = inner(sys.eigenvectors[static_cast<size_t>(p)],
                        sys.eigenvectors[static_cast<size_t>(q)]);
        CHECK(std::abs(ip - (p == q ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) <= 1e-10);
      }
  }
}

TEST_CASE("herm_eig agrees with the Jacobi oracle") {
  SplitMix64 rng(202);
  for (int dim : {2, 3, 4, 8, 12, 16}) {
    MatrixC a = random_hermitian(dim, rng);
    auto fast = herm_eigvals(a);
    auto oracle = jacobi_eigenvalues(a);
    REQUIRE(fast.size() == oracle.size());
    for (size_t k = 0; k < fast.size(); ++k)
      CHECK(fast[k] == doctest::Approx(oracle[k]).epsilon(1e-9));
  }
}

TEST_CASE("trace norm basics") {
  CHECK(trace_norm(sigma_z()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(trace_norm(MatrixC::zero(4, 4)) == 0.0);
  double tn = trace_norm(MatrixC::projector(ket0()) - MatrixC::projector(ket_plus()));
  CHECK(tn == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("trace distance of density operators never exceeds 2") {
  SplitMix64 rng(303);
  for (int trial = 0; trial < 40; ++trial) {
    int dim = 2 + static_cast<int>(rng.below(7));
    MatrixC a = random_density(dim, rng);
    MatrixC b = random_density(dim, rng);
    CHECK(trace_norm(a - b) <= 2.0 + 1e-9);
  }
  // Equality for orthogonal pure states.
  double tn = trace_norm(MatrixC::projector(ket0()) - MatrixC::projector(ket1()));
  CHECK(std::abs(tn - 2.0) <= 1e-9);
}

TEST_CASE("fidelity on known pairs") {
  MatrixC mixed = 0.5 * MatrixC::identity(2);
  CHECK(fidelity(mixed, mixed) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(MatrixC::projector(ket0()), MatrixC::projector(ket1())) ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fidelity(MatrixC::projector(ket0()), MatrixC::projector(ket_plus())) ==
        doctest::Approx(kSqrt2Inv).epsilon(1e-9));
}

TEST_CASE("fidelity is symmetric and bounded on random densities") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    int dim = 2 + static_cast<int>(rng.below(5));
    MatrixC a = random_density(dim, rng);
    MatrixC b = random_density(dim, rng);
    double fab = fidelity(a, b);
    double fba = fidelity(b, a);
    CHECK(std::abs(fab - fba) <= 1e-9);
    CHECK(fab >= 0.0);
    CHECK(fab <= 1.0 + 1e-9);
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("fidelity rejects non-density input") {
  MatrixC not_unit_trace = MatrixC::identity(2);
  CHECK_THROWS_AS(fidelity(not_unit_trace, 0.5 * MatrixC::identity(2)), Error);
  MatrixC not_psd(2, 2, {1.5, 0.0, 0.0, -0.5});
  CHECK_THROWS_AS(fidelity(not_psd, 0.5 * MatrixC::identity(2)), Error);
}

TEST_CASE("partial trace of a Bell projector is maximally mixed") {
  VectorC bell(4);
  bell[0] = kSqrt2Inv;
  bell[3] = kSqrt2Inv;
  MatrixC reduced = partial_trace(MatrixC::projector(bell), {2, 2}, {1});
  CHECK(max_abs_diff(reduced, 0.5 * MatrixC::identity(2)) <= 1e-12);
}

TEST_CASE("partial trace of a product state picks the right factor") {
  MatrixC rho = kron(MatrixC::projector(ket0()), MatrixC::projector(ket1()));
  CHECK(max_abs_diff(partial_trace(rho, {2, 2}, {0}), MatrixC::projector(ket0())) <= 1e-12);
  CHECK(max_abs_diff(partial_trace(rho, {2, 2}, {1}), MatrixC::projector(ket1())) <= 1e-12);
}

TEST_CASE("partial trace of the two-state ensemble purification") {
  // |Phi> = sum_i sqrt(1/2) |e_i>|phi_i> for the ensemble {1/2 |0>, 1/2 |+>}.
  VectorC phi(4);
  phi[0] = kSqrt2Inv;                      // |e0>|0>
  phi[2] = kSqrt2Inv * kSqrt2Inv;          // |e1>|+> components
  phi[3] = kSqrt2Inv * kSqrt2Inv;
  MatrixC reduced = partial_trace(MatrixC::projector(phi), {2, 2}, {1});
  MatrixC expected(2, 2, {0.75, 0.25, 0.25, 0.25});
  CHECK(max_abs_diff(reduced, expected) <= 1e-12);
}

TEST_CASE("partial trace validates factor dimensions and preserves trace") {
  MatrixC rho = kron(MatrixC::projector(ket0()), MatrixC::projector(ket1()));
  CHECK_THROWS_AS(partial_trace(rho, {2, 3}, {0}), Error);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {0, 0}), Error);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {5}), Error);

  SplitMix64 rng(505);
  MatrixC big = random_density(8, rng);
  MatrixC middle = partial_trace(big, {2, 2, 2}, {1});
  CHECK(std::abs(middle.trace() - cplx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("schmidt of a Bell state and a product state") {
  VectorC bell(4);
  bell[0] = kSqrt2Inv;
  bell[3] = kSqrt2Inv;
  auto form = schmidt(bell, 2, 2);
  REQUIRE(form.coefficients.size() == 2);
  CHECK(form.coefficients[0] == doctest::Approx(kSqrt2Inv).epsilon(1e-10));
  CHECK(form.coefficients[1] == doctest::Approx(kSqrt2Inv).epsilon(1e-10));

  VectorC product = tensor(ket0(), ket_plus());
  auto pform = schmidt(product, 2, 2);
  REQUIRE(pform.coefficients.size() == 2);
  CHECK(pform.coefficients[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pform.coefficients[1] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("schmidt coefficients of the {1/2 |0>, 1/2 |+>} purification") {
  VectorC phi(4);
  phi[0] = kSqrt2Inv;
  phi[2] = kSqrt2Inv * kSqrt2Inv;
  phi[3] = kSqrt2Inv * kSqrt2Inv;
  auto form = schmidt(phi, 2, 2);
  CHECK(form.coefficients[0] == doctest::Approx(std::cos(std::numbers::pi / 8)).epsilon(1e-9));
  CHECK(form.coefficients[1] == doctest::Approx(std::sin(std::numbers::pi / 8)).epsilon(1e-9));
}

TEST_CASE("schmidt reconstruction is the identity on random bipartite vectors") {
  SplitMix64 rng(606);
  const std::pair<int, int> shapes[] = {{2, 2}, {2, 4}, {4, 2}, {3, 5}, {8, 8}};
  for (auto [da, db] : shapes) {
    for (int trial = 0; trial < 8; ++trial) {
      VectorC v = random_unit(da * db, rng);
      auto form = schmidt(v, da, db);
      VectorC rebuilt = form.reconstruct();
      // compare up to nothing: reconstruction is exact, no phase freedom
      double diff = 0.0;
      for (int i = 0; i < v.dim(); ++i) diff = std::max(diff, std::abs(rebuilt[i] - v[i]));
      CHECK(diff <= 1e-9);

      double sumsq = 0.0;
      for (size_t k = 0; k < form.coefficients.size(); ++k) {
        CHECK(form.coefficients[k] >= 0.0);
        if (k > 0) CHECK(form.coefficients[k] <= form.coefficients[k - 1] + 1e-12);
        sumsq += form.coefficients[k] * form.coefficients[k];
      }
      CHECK(sumsq == doctest::Approx(1.0).epsilon(1e-10));

      for (const auto* basis : {&form.left_basis, &form.right_basis})
        for (size_t p = 0; p < basis->size(); ++p)
          for (size_t q = 0; q < basis->size(); ++q) {
            cplx ip = inner((*basis)[p], (*basis)[q]);
            CHECK(std::abs(ip - (p == q ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) <= 1e-10);
          }
    }
  }
}

TEST_CASE("schmidt rejects non-unit vectors and dimension mismatch") {
  VectorC v(4);
  v[0] = 0.5;
  CHECK_THROWS_AS(schmidt(v, 2, 2), Error);
  SplitMix64 rng(1);
  VectorC unit = random_unit(4, rng);
  CHECK_THROWS_AS(schmidt(unit, 2, 3), Error);
}

TEST_CASE("matrix square root squares back") {
  SplitMix64 rng(707);
  MatrixC rho = random_density(4, rng);
  MatrixC root = matrix_sqrt_psd(rho);
  CHECK(max_abs_diff(root * root, rho) <= 1e-10);
}
