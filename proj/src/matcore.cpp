// Copyright 2026 The qauth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qauth/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qauth/errors.hpp"

namespace qauth {

namespace {

std::string shape(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shapes " + shape(a) + " and " + shape(b) +
                         " differ");
  }
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> eigh(const ComplexMatrix& h) {
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(sym);
}

}  // namespace

void require_valid(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw DimensionError(std::string(what) + " is empty");
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + " has non-finite entries");
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  require_valid(m, what);
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + " is not square (" + shape(m) + ")");
  }
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_valid(a, "tensor lhs");
  require_valid(b, "tensor rhs");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const Index> dims,
                            std::span<const Index> keep) {
  require_square(m, "partial_trace operand");
  const auto n = static_cast<Index>(dims.size());
  Index total = 1;
  for (Index d : dims) {
    if (d < 1) throw DimensionError("partial_trace: factor dimension < 1");
    total *= d;
  }
  if (total != m.rows()) {
    throw DimensionError("partial_trace: factor dimensions multiply to " + std::to_string(total) +
                         ", operand is " + shape(m));
  }
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (Index k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: keep index out of range");
    if (kept[static_cast<std::size_t>(k)]) {
      throw DimensionError("partial_trace: duplicate keep index");
    }
    kept[static_cast<std::size_t>(k)] = true;
  }

  Index out_dim = 1;
  for (Index f = 0; f < n; ++f) {
    if (kept[static_cast<std::size_t>(f)]) out_dim *= dims[static_cast<std::size_t>(f)];
  }

  // Split every composite index into (kept part, traced part) once.
  std::vector<Index> kept_part(static_cast<std::size_t>(total));
  std::vector<Index> traced_part(static_cast<std::size_t>(total));
  for (Index idx = 0; idx < total; ++idx) {
    Index rest = idx;
    Index k_part = 0, k_scale = 1, t_part = 0, t_scale = 1;
    for (Index f = n - 1; f >= 0; --f) {
      const Index d = dims[static_cast<std::size_t>(f)];
      const Index digit = rest % d;
      rest /= d;
      if (kept[static_cast<std::size_t>(f)]) {
        k_part += digit * k_scale;
        k_scale *= d;
      } else {
        t_part += digit * t_scale;
        t_scale *= d;
      }
    }
    kept_part[static_cast<std::size_t>(idx)] = k_part;
    traced_part[static_cast<std::size_t>(idx)] = t_part;
  }

  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (Index j = 0; j < total; ++j) {
    const Index tj = traced_part[static_cast<std::size_t>(j)];
    const Index kj = kept_part[static_cast<std::size_t>(j)];
    for (Index i = 0; i < total; ++i) {
      if (traced_part[static_cast<std::size_t>(i)] != tj) continue;
      out(kept_part[static_cast<std::size_t>(i)], kj) += m(i, j);
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  require_valid(m, "dagger operand");
  return m.adjoint();
}

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_valid(a, "mul lhs");
  require_valid(b, "mul rhs");
  if (a.cols() != b.rows()) {
    throw DimensionError("mul: inner dimensions of " + shape(a) + " and " + shape(b) +
                         " disagree");
  }
  return a * b;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  return a + b;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "sub");
  return a - b;
}

ComplexMatrix scale(const ComplexMatrix& a, Complex s) { return s * a; }

Complex trace(const ComplexMatrix& m) {
  require_square(m, "trace operand");
  return m.trace();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_distance");
  return (a - b).norm();
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& a) {
  if (u.cols() != a.rows() || a.rows() != a.cols()) {
    throw DimensionError("conjugate: " + shape(u) + " cannot act on " + shape(a));
  }
  return u * a * u.adjoint();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || !m.allFinite()) return false;
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

bool is_projector(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  return (m * m - m).norm() <= tol;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigenvalues operand");
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(0.5 * (h + h.adjoint()),
                                                      Eigen::EigenvaluesOnly)
      .eigenvalues();
}

ComplexMatrix hermitian_expi(const ComplexMatrix& h, double herm_tol) {
  require_square(h, "hermitian_expi operand");
  if (!is_hermitian(h, herm_tol)) {
    throw ValidationError("hermitian_expi: generator is not Hermitian");
  }
  const auto es = eigh(h);
  ComplexVector phases(es.eigenvalues().size());
  for (Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, es.eigenvalues()(k));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  require_square(m, "psd_sqrt operand");
  const auto es = eigh(m);
  RealVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix range_basis(const ComplexMatrix& m, double tol) {
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  Index rank = 0;
  for (Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > tol) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

ComplexMatrix orthonormal_complement(const ComplexMatrix& cols) {
  const Index n = cols.rows();
  ComplexMatrix basis(n, n);
  Index filled = cols.cols();
  basis.leftCols(filled) = cols;
  for (Index e = 0; e < n && filled < n; ++e) {
    ComplexVector v = ComplexVector::Unit(n, e);
    // Two passes of classical Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      v -= basis.leftCols(filled) * (basis.leftCols(filled).adjoint() * v);
    }
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    basis.col(filled++) = v / norm;
  }
  if (filled != n) throw ValidationError("orthonormal_complement: input columns not independent");
  return basis.rightCols(n - cols.cols());
}

ComplexMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  const double s = std::sqrt(0.5);
  // Column-major fill order is part of the determinism contract.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(s * re, s * im);
    }
  }
  return g;
}

ComplexMatrix random_hermitian(Index d, Rng& rng) {
  const ComplexMatrix g = random_gaussian(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_unitary(Index d, Rng& rng) {
  if (d < 1) throw DimensionError("random_unitary: dimension < 1");
  const ComplexMatrix g = random_gaussian(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  // Fixing the phases of diag(R) makes the distribution Haar.
  for (Index k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    const double a = std::abs(rk);
    q.col(k) *= (a > 0.0) ? rk / a : Complex(1.0);
  }
  return q;
}

ComplexMatrix random_unitary(Index d, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(d, rng);
}

std::string density_violation(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() < 1 || m.rows() != m.cols()) return "not a non-empty square matrix";
  if (!m.allFinite()) return "non-finite entries";
  const double herm = (m - m.adjoint()).norm();
  if (herm > tol.herm) return "not Hermitian (residual " + std::to_string(herm) + ")";
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0)) > tol.trace) {
    return "trace " + std::to_string(tr.real()) + " != 1";
  }
  const double lo = hermitian_eigenvalues(m)(0);
  if (lo < -tol.psd) return "negative eigenvalue " + std::to_string(lo);
  return {};
}

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, const Tolerances& tol) {
  require_square(m, "density operator");
  if (auto why = density_violation(m, tol); !why.empty()) {
    throw ValidationError("density operator: " + why);
  }
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::repair(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "density operator");
  const auto es = eigh(m);
  const RealVector vals = es.eigenvalues().cwiseMax(0.0);
  const double total = vals.sum();
  if (!(total > 0.0)) throw ValidationError("density operator: no positive spectrum to repair");
  ComplexMatrix fixed = es.eigenvectors() * (vals / total).cast<Complex>().asDiagonal() *
                        es.eigenvectors().adjoint();
  fixed = 0.5 * (fixed + fixed.adjoint());
  return from_matrix(std::move(fixed), tol);
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0) || !psi.allFinite()) throw ValidationError("pure state: zero or non-finite vector");
  return DensityOperator(psi * psi.adjoint() / n2);
}

DensityOperator DensityOperator::maximally_mixed(Index d) {
  if (d < 1) throw DimensionError("maximally_mixed: dimension < 1");
  return DensityOperator(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityOperator random_density(Index d, Index rank, Rng& rng) {
  if (d < 1 || rank < 1) throw DimensionError("random_density: dimension < 1");
  const ComplexMatrix a = random_gaussian(d, rank, rng);
  ComplexMatrix m = a * a.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint());
  return DensityOperator::from_matrix(std::move(m));
}

DensityOperator random_density(Index d, Rng& rng) { return random_density(d, d, rng); }

DensityOperator random_density(Index d, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rng);
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::from_matrix(tensor(a.matrix(), b.matrix()));
}

DensityOperator conjugate(const ComplexMatrix& u, const DensityOperator& rho) {
  ComplexMatrix m = conjugate(u, rho.matrix());
  m = 0.5 * (m + m.adjoint());
  return DensityOperator::from_matrix(std::move(m));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const Index> dims,
                              std::span<const Index> keep) {
  ComplexMatrix m = partial_trace(rho.matrix(), dims, keep);
  m = 0.5 * (m + m.adjoint());
  return DensityOperator::from_matrix(std::move(m));
}

}  // namespace qauth
