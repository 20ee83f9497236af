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

#ifndef QBC3_LINALG_HPP
#define QBC3_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbc3 {

using cplx = std::complex<double>;

// Dense operations refuse registers above 2^12 dimensions.
inline constexpr int kMaxRegisterDim = 4096;

// Working tolerances, sized for double precision at desk-scale dimensions.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kVerifyTol = 1e-9;
inline constexpr double kPsdClampTol = 1e-10;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class RegisterTooLarge : public Error {
 public:
  explicit RegisterTooLarge(int dim)
      : Error("register too large: dimension " + std::to_string(dim) +
              " exceeds " + std::to_string(kMaxRegisterDim)) {}
};

// Complex column vector.
struct VectorC {
  std::vector<cplx> entries;

  VectorC() = default;
  explicit VectorC(int dim) : entries(static_cast<size_t>(dim)) {}
  VectorC(std::initializer_list<cplx> init) : entries(init) {}

  int dim() const { return static_cast<int>(entries.size()); }
  cplx& operator[](int i) { return entries[static_cast<size_t>(i)]; }
  const cplx& operator[](int i) const { return entries[static_cast<size_t>(i)]; }

  double norm() const;
  VectorC normalized() const;
  bool all_finite() const;
};

// <a|b>, conjugate-linear in the first argument.
cplx inner(const VectorC& a, const VectorC& b);

VectorC operator+(const VectorC& a, const VectorC& b);
VectorC operator-(const VectorC& a, const VectorC& b);
VectorC operator*(cplx s, const VectorC& v);
VectorC tensor(const VectorC& a, const VectorC& b);

// Dense complex matrix, row-major.
struct MatrixC {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> entries;  // rows * cols, row-major

  MatrixC() = default;
  MatrixC(int r, int c) : rows(r), cols(c), entries(static_cast<size_t>(r) * c) {}
  MatrixC(int r, int c, std::initializer_list<cplx> init);

  cplx& operator()(int i, int j) { return entries[static_cast<size_t>(i) * cols + j]; }
  const cplx& operator()(int i, int j) const {
    return entries[static_cast<size_t>(i) * cols + j];
  }

  static MatrixC identity(int n);
  static MatrixC zero(int r, int c);
  // |v><v|
  static MatrixC projector(const VectorC& v);
  // |a><b|
  static MatrixC outer(const VectorC& a, const VectorC& b);

  MatrixC dagger() const;
  cplx trace() const;
  double max_abs() const;
  bool is_hermitian(double tol = kHermitianTol) const;
  bool is_square() const { return rows == cols; }

  VectorC apply(const VectorC& v) const;
};

MatrixC operator+(const MatrixC& a, const MatrixC& b);
MatrixC operator-(const MatrixC& a, const MatrixC& b);
MatrixC operator*(const MatrixC& a, const MatrixC& b);
MatrixC operator*(cplx s, const MatrixC& a);
MatrixC& operator+=(MatrixC& a, const MatrixC& b);

// max_ij |a_ij - b_ij|
double max_abs_diff(const MatrixC& a, const MatrixC& b);

// Biorthogonal expansion of a bipartite pure vector: coefficients are the
// square roots of the reduced-state eigenvalues, nonincreasing; both bases
// are orthonormal and sized min(dimA, dimB) (zero coefficients padded with
// completed basis vectors).
struct SchmidtForm {
  std::vector<double> coefficients;
  std::vector<VectorC> left_basis;   // subsystem A
  std::vector<VectorC> right_basis;  // subsystem B

  VectorC reconstruct() const;
};

struct EigenSystem {
  std::vector<double> eigenvalues;     // descending
  std::vector<VectorC> eigenvectors;  // orthonormal, matching order
};

// Kronecker product. Refuses results above the register cap.
MatrixC kron(const MatrixC& a, const MatrixC& b);

// Hermitian eigendecomposition, eigenvalues descending. Rejects
// non-Hermitian input.
EigenSystem herm_eig(const MatrixC& a);

// Eigenvalues only (descending); cheaper than herm_eig for large inputs.
std::vector<double> herm_eigvals(const MatrixC& a);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const MatrixC& a);

// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)) between density
// operators. Rejects non-density input.
double fidelity(const MatrixC& rho, const MatrixC& sigma);

// Principal square root of a positive semidefinite Hermitian matrix;
// eigenvalues in [-kPsdClampTol, 0) are clamped to zero.
MatrixC matrix_sqrt_psd(const MatrixC& a);

// Trace over the factors not listed in `keep`. `dims` are the tensor factor
// dimensions, most significant first (matching kron order); `keep` lists the
// factor indices to retain, in the order they should appear in the result.
MatrixC partial_trace(const MatrixC& a, const std::vector<int>& dims,
                      const std::vector<int>& keep);

// Schmidt decomposition of a unit vector on a dimA x dimB bipartite space.
SchmidtForm schmidt(const VectorC& v, int dim_a, int dim_b);

// Extends an orthonormal set to `count` vectors of dimension `dim` by
// orthogonalizing standard basis candidates.
void complete_orthonormal(std::vector<VectorC>& vecs, int dim, int count);

}  // namespace qbc3

#endif  // QBC3_LINALG_HPP
