// Copyright 2026 The QLDP Authors
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

// Dense complex-matrix kernel: validated state/operator types, Hermitian
// spectral calculus, and the distinguishability measures (trace distance,
// Uhlmann fidelity, hockey-stick divergence).
//
// Every spectral routine symmetrizes its input, H <- (H + H^dagger) / 2,
// before calling the Hermitian eigensolver.

#ifndef QLDP_QOPS_HPP_
#define QLDP_QOPS_HPP_

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qldp/errors.hpp"

namespace qldp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Caller-owned random stream. Never shared between threads.
using Rng = std::mt19937_64;

// Independent stream for sub-task `index` of a computation seeded by `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

inline constexpr double kTolHerm = 1e-10;
inline constexpr double kTolPsd = 1e-10;
inline constexpr double kTolNorm = 1e-12;
// Comparison tolerance for analytic identities and channel equality.
inline constexpr double kTolIdentity = 1e-9;

class HermitianOperator {
 public:
  // Throws kInvalidInput unless `m` is square, finite, and equal to its
  // conjugate transpose within kTolHerm (max-abs entry). Stores the
  // symmetrized matrix.
  explicit HermitianOperator(Matrix m);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

class PureState {
 public:
  // Throws kInvalidInput unless the Euclidean norm is 1 within kTolNorm.
  explicit PureState(Vector amplitudes);

  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  // |psi><psi|
  Matrix projector() const;

 private:
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  // Throws kInvalidInput unless `m` is Hermitian, its eigenvalues are
  // >= -kTolPsd, and |Tr m - 1| <= kTolPsd.
  explicit DensityMatrix(Matrix m);
  explicit DensityMatrix(const PureState& psi);

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix basis(int dim, int index);
  // diag(weights); weights must form a probability vector.
  static DensityMatrix diagonal(const std::vector<double>& weights);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

// Eigenvalues ascending with matching eigenvector columns.
struct Spectrum {
  RealVector values;
  Matrix vectors;
};

// Operations on raw matrices. These skip type validation and are meant for
// inner loops; the typed overloads below validate and then forward here.
namespace dense {

Matrix symmetrize(const Matrix& m);
Spectrum eigh(const Matrix& m);
// Eigenvalues only (ascending).
RealVector eigvalsh(const Matrix& m);
// Spectral square root with negative eigenvalues clamped to zero.
Matrix sqrt_psd(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = kTolHerm);
bool is_unitary(const Matrix& u, double tol = kTolIdentity);
double max_abs_diff(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

Matrix positive_part(const Matrix& h);
double trace_distance(const Matrix& rho, const Matrix& sigma);
double fidelity(const Matrix& rho, const Matrix& sigma);
double hockey_stick(const Matrix& rho, const Matrix& sigma, double gamma);

// Haar-random unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix random_unitary(int dim, Rng& rng);
// Orthonormal basis of the column span (Householder QR, R's diagonal phases
// folded into Q so the map is continuous in its input).
Matrix orthonormalize(const Matrix& columns);
Matrix gaussian_matrix(int rows, int cols, Rng& rng);

}  // namespace dense

// Sum over nonnegative eigenvalues a_i of a_i |i><i|.
HermitianOperator positive_part(const HermitianOperator& h);

// 1/2 ||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// ||sqrt(rho) sqrt(sigma)||_1^2 computed as (sum_i sqrt(lambda_i))^2 over the
// eigenvalues of sqrt(rho) sigma sqrt(rho).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// E_gamma(rho || sigma) = Tr[(rho - gamma sigma)_+], gamma >= 1.
double hockey_stick(const DensityMatrix& rho, const DensityMatrix& sigma,
                    double gamma);

PureState random_pure(int dim, Rng& rng);
// Mixture of `rank` Haar-random pure states with Dirichlet(1, ..., 1) weights.
DensityMatrix random_density(int dim, int rank, Rng& rng);

}  // namespace qldp

#endif  // QLDP_QOPS_HPP_
