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

#ifndef QAUTH_MATCORE_HPP
#define QAUTH_MATCORE_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qauth/rng.hpp"

namespace qauth {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct Tolerances {
  double herm = 1e-10;
  double trace = 1e-10;
  double psd = 1e-9;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

// Factor ordering: the leftmost tensor factor is the most significant digit
// of a composite index, i.e. index(a, b) = a * dim(b) + b.

/// Throws DimensionError for empty matrices, ValidationError for NaN/Inf.
void require_valid(const ComplexMatrix& m, const char* what = "matrix");
void require_square(const ComplexMatrix& m, const char* what = "matrix");

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
/// Left fold of `tensor` over the list; the empty list yields the 1x1 identity.
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);

/// Traces out every factor not listed in `keep`. `dims` lists the factor
/// dimensions in tensor order; kept factors stay in their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const Index> dims,
                            std::span<const Index> keep);

// Checked arithmetic. Eigen's operators assert on shape mismatch; these
// throw DimensionError instead and are meant for data crossing an API edge.
ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex s);
Complex trace(const ComplexMatrix& m);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// U A U^dagger.
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);
bool is_projector(const ComplexMatrix& m, double tol = 1e-10);

/// Eigenvalues (ascending) of a Hermitian matrix.
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

/// exp(i h) for Hermitian h, through the spectral decomposition.
ComplexMatrix hermitian_expi(const ComplexMatrix& h, double herm_tol = 1e-10);

/// Principal square root of a positive semidefinite matrix; eigenvalues
/// below zero are clipped.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Orthonormal basis (columns) of the range of `m`, singular values above tol.
ComplexMatrix range_basis(const ComplexMatrix& m, double tol = 1e-9);

/// Completes the orthonormal columns of `cols` to a basis of C^n by
/// Gram-Schmidt over the standard basis vectors. Returns only the new columns.
ComplexMatrix orthonormal_complement(const ComplexMatrix& cols);

/// Entries are i.i.d. standard complex Gaussian (variance 1/2 per part).
ComplexMatrix random_gaussian(Index rows, Index cols, Rng& rng);
ComplexMatrix random_hermitian(Index d, Rng& rng);
ComplexMatrix random_unitary(Index d, Rng& rng);
ComplexMatrix random_unitary(Index d, std::uint64_t seed);

/// Positive semidefinite, unit trace, Hermitian.
class DensityOperator {
 public:
  /// Validates the invariants; throws ValidationError / DimensionError.
  static DensityOperator from_matrix(ComplexMatrix m, const Tolerances& tol = {});
  /// Hermitizes, clips negative eigenvalues and renormalizes first.
  /// Only meant for matrices that are a density operator up to roundoff.
  static DensityOperator repair(const ComplexMatrix& m, const Tolerances& tol = {});
  /// |psi><psi| / <psi|psi>.
  static DensityOperator pure(const ComplexVector& psi);
  static DensityOperator maximally_mixed(Index d);

  [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
  [[nodiscard]] Index dim() const { return m_.rows(); }

 private:
  explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Returns an empty string when `m` satisfies the density invariants, else a
/// description of the first violation.
std::string density_violation(const ComplexMatrix& m, const Tolerances& tol = {});

DensityOperator random_density(Index d, Rng& rng);
DensityOperator random_density(Index d, std::uint64_t seed);
/// Rank-limited variant: A is d x rank.
DensityOperator random_density(Index d, Index rank, Rng& rng);

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
/// U rho U^dagger with a unitary U.
DensityOperator conjugate(const ComplexMatrix& u, const DensityOperator& rho);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const Index> dims,
                              std::span<const Index> keep);

}  // namespace qauth

#endif  // QAUTH_MATCORE_HPP
