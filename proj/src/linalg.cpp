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

#include "qbc3/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace qbc3 {

namespace {

using EigenMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EigenMap = Eigen::Map<const EigenMatrix>;

void check_register(int dim) {
  if (dim > kMaxRegisterDim) throw RegisterTooLarge(dim);
}

void check_hermitian(const MatrixC& a, const char* op) {
  if (!a.is_square())
    throw Error(std::string(op) + ": matrix is not square");
  check_register(a.rows);
  if (!a.is_hermitian())
    throw Error(std::string(op) + ": matrix is not Hermitian");
}

// Density operator: Hermitian, PSD within the clamp tolerance, unit trace.
void check_density(const MatrixC& a, const char* op) {
  check_hermitian(a, op);
  if (std::abs(a.trace() - cplx(1.0, 0.0)) > 1e-10)
    throw Error(std::string(op) + ": trace is not 1");
  auto evs = herm_eigvals(a);
  if (!evs.empty() && evs.back() < -kPsdClampTol)
    throw Error(std::string(op) + ": matrix is not positive semidefinite");
}

}  // namespace

double VectorC::norm() const {
  double s = 0.0;
  for (const auto& z : entries) s += std::norm(z);
  return std::sqrt(s);
}

VectorC VectorC::normalized() const {
  double n = norm();
  if (n == 0.0) throw Error("cannot normalize zero vector");
  VectorC out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = entries[static_cast<size_t>(i)] / n;
  return out;
}

bool VectorC::all_finite() const {
  for (const auto& z : entries)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

cplx inner(const VectorC& a, const VectorC& b) {
  if (a.dim() != b.dim()) throw Error("inner: dimension mismatch");
  cplx s(0.0, 0.0);
  for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

VectorC operator+(const VectorC& a, const VectorC& b) {
  if (a.dim() != b.dim()) throw Error("vector add: dimension mismatch");
  VectorC out(a.dim());
  for (int i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

VectorC operator-(const VectorC& a, const VectorC& b) {
  if (a.dim() != b.dim()) throw Error("vector sub: dimension mismatch");
  VectorC out(a.dim());
  for (int i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

VectorC operator*(cplx s, const VectorC& v) {
  VectorC out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out[i] = s * v[i];
  return out;
}

VectorC tensor(const VectorC& a, const VectorC& b) {
  long long d = static_cast<long long>(a.dim()) * b.dim();
  if (d > kMaxRegisterDim) throw RegisterTooLarge(static_cast<int>(std::min<long long>(d, 1 << 30)));
  VectorC out(static_cast<int>(d));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

MatrixC::MatrixC(int r, int c, std::initializer_list<cplx> init)
    : rows(r), cols(c), entries(init) {
  if (entries.size() != static_cast<size_t>(r) * c)
    throw Error("matrix initializer size mismatch");
}

MatrixC MatrixC::identity(int n) {
  MatrixC m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

MatrixC MatrixC::zero(int r, int c) { return MatrixC(r, c); }

MatrixC MatrixC::projector(const VectorC& v) { return outer(v, v); }

MatrixC MatrixC::outer(const VectorC& a, const VectorC& b) {
  MatrixC m(a.dim(), b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

MatrixC MatrixC::dagger() const {
  MatrixC m(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

cplx MatrixC::trace() const {
  if (!is_square()) throw Error("trace: matrix is not square");
  cplx s(0.0, 0.0);
  for (int i = 0; i < rows; ++i) s += (*this)(i, i);
  return s;
}

double MatrixC::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries) m = std::max(m, std::abs(z));
  return m;
}

bool MatrixC::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = i; j < cols; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

VectorC MatrixC::apply(const VectorC& v) const {
  if (cols != v.dim()) throw Error("apply: dimension mismatch");
  VectorC out(rows);
  for (int i = 0; i < rows; ++i) {
    cplx s(0.0, 0.0);
    const cplx* row = &entries[static_cast<size_t>(i) * cols];
    for (int j = 0; j < cols; ++j) s += row[j] * v[j];
    out[i] = s;
  }
  return out;
}

MatrixC operator+(const MatrixC& a, const MatrixC& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw Error("matrix add: shape mismatch");
  MatrixC out(a.rows, a.cols);
  for (size_t k = 0; k < a.entries.size(); ++k) out.entries[k] = a.entries[k] + b.entries[k];
  return out;
}

MatrixC operator-(const MatrixC& a, const MatrixC& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw Error("matrix sub: shape mismatch");
  MatrixC out(a.rows, a.cols);
  for (size_t k = 0; k < a.entries.size(); ++k) out.entries[k] = a.entries[k] - b.entries[k];
  return out;
}

MatrixC operator*(const MatrixC& a, const MatrixC& b) {
  if (a.cols != b.rows) throw Error("matrix mul: shape mismatch");
  MatrixC out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      const cplx* brow = &b.entries[static_cast<size_t>(k) * b.cols];
      cplx* orow = &out.entries[static_cast<size_t>(i) * out.cols];
      for (int j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

MatrixC operator*(cplx s, const MatrixC& a) {
  MatrixC out(a.rows, a.cols);
  for (size_t k = 0; k < a.entries.size(); ++k) out.entries[k] = s * a.entries[k];
  return out;
}

MatrixC& operator+=(MatrixC& a, const MatrixC& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw Error("matrix add: shape mismatch");
  for (size_t k = 0; k < a.entries.size(); ++k) a.entries[k] += b.entries[k];
  return a;
}

double max_abs_diff(const MatrixC& a, const MatrixC& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw Error("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (size_t k = 0; k < a.entries.size(); ++k)
    m = std::max(m, std::abs(a.entries[k] - b.entries[k]));
  return m;
}

VectorC SchmidtForm::reconstruct() const {
  if (coefficients.empty()) throw Error("reconstruct: empty Schmidt form");
  int da = left_basis[0].dim();
  int db = right_basis[0].dim();
  VectorC out(da * db);
  for (size_t k = 0; k < coefficients.size(); ++k) {
    const VectorC& e = left_basis[k];
    const VectorC& f = right_basis[k];
    double c = coefficients[k];
    if (c == 0.0) continue;
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) out[i * db + j] += c * e[i] * f[j];
  }
  return out;
}

MatrixC kron(const MatrixC& a, const MatrixC& b) {
  long long r = static_cast<long long>(a.rows) * b.rows;
  long long c = static_cast<long long>(a.cols) * b.cols;
  if (r > kMaxRegisterDim || c > kMaxRegisterDim)
    throw RegisterTooLarge(static_cast<int>(std::min<long long>(std::max(r, c), 1 << 30)));
  MatrixC out(static_cast<int>(r), static_cast<int>(c));
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (int k = 0; k < b.rows; ++k)
        for (int l = 0; l < b.cols; ++l)
          out(i * b.rows + k, j * b.cols + l) = aij * b(k, l);
    }
  return out;
}

EigenSystem herm_eig(const MatrixC& a) {
  check_hermitian(a, "herm_eig");
  EigenMap m(a.entries.data(), a.rows, a.cols);
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw Error("herm_eig: eigensolver failed");

  EigenSystem sys;
  int n = a.rows;
  sys.eigenvalues.resize(static_cast<size_t>(n));
  sys.eigenvectors.resize(static_cast<size_t>(n));
  // Eigen sorts ascending; flip to descending.
  for (int k = 0; k < n; ++k) {
    int src = n - 1 - k;
    sys.eigenvalues[static_cast<size_t>(k)] = solver.eigenvalues()(src);
    VectorC v(n);
    for (int i = 0; i < n; ++i) v[i] = solver.eigenvectors()(i, src);
    sys.eigenvectors[static_cast<size_t>(k)] = std::move(v);
  }
  return sys;
}

std::vector<double> herm_eigvals(const MatrixC& a) {
  check_hermitian(a, "herm_eigvals");
  EigenMap m(a.entries.data(), a.rows, a.cols);
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("herm_eigvals: eigensolver failed");
  std::vector<double> evs(static_cast<size_t>(a.rows));
  for (int k = 0; k < a.rows; ++k) evs[static_cast<size_t>(k)] = solver.eigenvalues()(a.rows - 1 - k);
  return evs;
}

double trace_norm(const MatrixC& a) {
  auto evs = herm_eigvals(a);
  double s = 0.0;
  for (double e : evs) s += std::abs(e);
  return s;
}

MatrixC matrix_sqrt_psd(const MatrixC& a) {
  auto sys = herm_eig(a);
  int n = a.rows;
  MatrixC out(n, n);
  for (size_t k = 0; k < sys.eigenvalues.size(); ++k) {
    double e = sys.eigenvalues[k];
    if (e < 0.0) {
      if (e < -kPsdClampTol) throw Error("matrix_sqrt_psd: negative eigenvalue");
      e = 0.0;
    }
    double r = std::sqrt(e);
    const VectorC& v = sys.eigenvectors[k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) += r * v[i] * std::conj(v[j]);
  }
  return out;
}

double fidelity(const MatrixC& rho, const MatrixC& sigma) {
  check_density(rho, "fidelity");
  check_density(sigma, "fidelity");
  if (rho.rows != sigma.rows) throw Error("fidelity: dimension mismatch");

  MatrixC root = matrix_sqrt_psd(rho);
  MatrixC inner = root * sigma * root;
  // Symmetrize away roundoff before the second eigensolve.
  MatrixC herm = 0.5 * (inner + inner.dagger());
  auto evs = herm_eigvals(herm);
  double f = 0.0;
  for (double e : evs) f += std::sqrt(std::max(e, 0.0));
  return f;
}

MatrixC partial_trace(const MatrixC& a, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
  if (!a.is_square()) throw Error("partial_trace: matrix is not square");
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw Error("partial_trace: nonpositive factor dimension");
    total *= d;
  }
  if (total != a.rows) throw Error("partial_trace: dims do not match matrix dimension");
  check_register(a.rows);

  int nf = static_cast<int>(dims.size());
  std::vector<bool> kept(static_cast<size_t>(nf), false);
  long long out_dim = 1;
  for (int k : keep) {
    if (k < 0 || k >= nf) throw Error("partial_trace: keep index out of range");
    if (kept[static_cast<size_t>(k)]) throw Error("partial_trace: duplicate keep index");
    kept[static_cast<size_t>(k)] = true;
    out_dim *= dims[static_cast<size_t>(k)];
  }

  // Factor strides, most significant factor first (kron convention).
  std::vector<long long> stride(static_cast<size_t>(nf), 1);
  for (int f = nf - 2; f >= 0; --f)
    stride[static_cast<size_t>(f)] = stride[static_cast<size_t>(f + 1)] * dims[static_cast<size_t>(f + 1)];

  // Output strides over kept factors, in `keep` order.
  std::vector<long long> out_stride(keep.size(), 1);
  for (int k = static_cast<int>(keep.size()) - 2; k >= 0; --k)
    out_stride[static_cast<size_t>(k)] =
        out_stride[static_cast<size_t>(k + 1)] * dims[static_cast<size_t>(keep[static_cast<size_t>(k + 1)])];

  MatrixC out(static_cast<int>(out_dim), static_cast<int>(out_dim));
  std::vector<int> rdig(static_cast<size_t>(nf)), cdig(static_cast<size_t>(nf));
  for (int r = 0; r < a.rows; ++r) {
    long long rr = r;
    for (int f = 0; f < nf; ++f) {
      rdig[static_cast<size_t>(f)] = static_cast<int>(rr / stride[static_cast<size_t>(f)]);
      rr %= stride[static_cast<size_t>(f)];
    }
    for (int c = 0; c < a.cols; ++c) {
      long long cc = c;
      bool diagonal_on_traced = true;
      for (int f = 0; f < nf; ++f) {
        cdig[static_cast<size_t>(f)] = static_cast<int>(cc / stride[static_cast<size_t>(f)]);
        cc %= stride[static_cast<size_t>(f)];
        if (!kept[static_cast<size_t>(f)] && cdig[static_cast<size_t>(f)] != rdig[static_cast<size_t>(f)]) {
          diagonal_on_traced = false;
        }
      }
      if (!diagonal_on_traced) continue;
      long long ro = 0, co = 0;
      for (size_t k = 0; k < keep.size(); ++k) {
        ro += rdig[static_cast<size_t>(keep[k])] * out_stride[k];
        co += cdig[static_cast<size_t>(keep[k])] * out_stride[k];
      }
      out(static_cast<int>(ro), static_cast<int>(co)) += a(r, c);
    }
  }
  return out;
}

void complete_orthonormal(std::vector<VectorC>& vecs, int dim, int count) {
  for (int cand = 0; cand < dim && static_cast<int>(vecs.size()) < count; ++cand) {
    VectorC v(dim);
    v[cand] = 1.0;
    for (const auto& u : vecs) {
      cplx c = inner(u, v);
      for (int i = 0; i < dim; ++i) v[i] -= c * u[i];
    }
    double n = v.norm();
    if (n > 0.5) {  // candidate mostly outside current span
      for (int i = 0; i < dim; ++i) v[i] /= n;
      vecs.push_back(std::move(v));
    }
  }
  if (static_cast<int>(vecs.size()) < count)
    throw Error("complete_orthonormal: could not complete basis");
}

SchmidtForm schmidt(const VectorC& v, int dim_a, int dim_b) {
  if (static_cast<long long>(dim_a) * dim_b != v.dim())
    throw Error("schmidt: dimensions do not match vector");
  check_register(v.dim());
  if (std::abs(v.norm() - 1.0) > kOrthonormalTol)
    throw Error("schmidt: vector is not unit norm");

  // rho_A[i,i'] = sum_j v[i,j] conj(v[i',j])
  MatrixC rho_a(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int ip = 0; ip < dim_a; ++ip) {
      cplx s(0.0, 0.0);
      for (int j = 0; j < dim_b; ++j)
        s += v[i * dim_b + j] * std::conj(v[ip * dim_b + j]);
      rho_a(i, ip) = s;
    }

  auto sys = herm_eig(rho_a);
  int k_max = std::min(dim_a, dim_b);

  SchmidtForm form;
  constexpr double kRankTol = 1e-12;
  for (int k = 0; k < k_max; ++k) {
    double lam = std::max(sys.eigenvalues[static_cast<size_t>(k)], 0.0);
    double coef = std::sqrt(lam);
    const VectorC& e = sys.eigenvectors[static_cast<size_t>(k)];
    if (lam > kRankTol) {
      // f[j] = <e|row_j> / coef where row_j picks the B index.
      VectorC f(dim_b);
      for (int j = 0; j < dim_b; ++j) {
        cplx s(0.0, 0.0);
        for (int i = 0; i < dim_a; ++i) s += std::conj(e[i]) * v[i * dim_b + j];
        f[j] = s / coef;
      }
      form.coefficients.push_back(coef);
      form.left_basis.push_back(e);
      form.right_basis.push_back(std::move(f));
    } else {
      form.coefficients.push_back(0.0);
      form.left_basis.push_back(e);
      // right vector filled in by completion below
    }
  }
  complete_orthonormal(form.right_basis, dim_b, k_max);
  return form;
}

}  // namespace qbc3
