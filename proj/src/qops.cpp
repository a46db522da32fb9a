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

#include "qldp/qops.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qldp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kDegenerateObservable:
      return "degenerate-observable";
    case ErrorCode::kNoninvertibleMechanism:
      return "noninvertible-mechanism";
    case ErrorCode::kOutOfRegime:
      return "out-of-regime";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kParse:
      return "parse-error";
    case ErrorCode::kIo:
      return "io-error";
  }
  return "unknown";
}

Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32), 0x9E3779B9u};
  return Rng(seq);
}

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

void require_same_dim(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          ErrorCode::kInvalidInput,
          "dimension mismatch: " + std::to_string(a.rows()) + " vs " +
              std::to_string(b.rows()));
}

// Eigenvalues within solver roundoff of zero (relative to the largest
// magnitude) are set to zero before square roots; otherwise noise of order
// 1e-17 turns into 3e-9 after sqrt on rank-deficient inputs.
RealVector drop_roundoff(const RealVector& values) {
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double cut = 1e-13 * scale;
  return values.unaryExpr([cut](double v) { return v <= cut ? 0.0 : v; });
}

}  // namespace

namespace dense {

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Spectrum eigh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(m));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(m),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix sqrt_psd(const Matrix& m) {
  const Spectrum s = eigh(m);
  const RealVector roots = drop_roundoff(s.values).cwiseSqrt();
  return s.vectors * roots.cast<Complex>().asDiagonal() * s.vectors.adjoint();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs_diff(u.adjoint() * u, Matrix::Identity(u.rows(), u.cols())) <=
         tol;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix positive_part(const Matrix& h) {
  const Spectrum s = eigh(h);
  const RealVector kept = s.values.cwiseMax(0.0);
  return s.vectors * kept.cast<Complex>().asDiagonal() * s.vectors.adjoint();
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  require_same_dim(rho, sigma);
  return 0.5 * eigvalsh(rho - sigma).cwiseAbs().sum();
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  require_same_dim(rho, sigma);
  const Matrix root = sqrt_psd(rho);
  const RealVector lambdas = eigvalsh(root * sigma * root);
  const double s = drop_roundoff(lambdas).cwiseSqrt().sum();
  return std::clamp(s * s, 0.0, 1.0);
}

double hockey_stick(const Matrix& rho, const Matrix& sigma, double gamma) {
  require_same_dim(rho, sigma);
  require(gamma >= 1.0, ErrorCode::kInvalidInput,
          "hockey-stick divergence needs gamma >= 1, got " +
              std::to_string(gamma));
  return eigvalsh(rho - gamma * sigma).cwiseMax(0.0).sum();
}

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

Matrix orthonormalize(const Matrix& columns) {
  Eigen::HouseholderQR<Matrix> qr(columns);
  const Matrix q = qr.householderQ() *
                   Matrix::Identity(columns.rows(), columns.cols());
  const Matrix r = qr.matrixQR();
  Matrix out = q;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) out.col(j) *= diag / mag;
  }
  return out;
}

Matrix random_unitary(int dim, Rng& rng) {
  return orthonormalize(gaussian_matrix(dim, dim, rng));
}

}  // namespace dense

HermitianOperator::HermitianOperator(Matrix m) {
  require(m.rows() == m.cols() && m.rows() >= 1, ErrorCode::kInvalidInput,
          "operator must be a nonempty square matrix");
  require(all_finite(m), ErrorCode::kInvalidInput,
          "operator has non-finite entries");
  require(dense::is_hermitian(m, kTolHerm), ErrorCode::kInvalidInput,
          "operator is not Hermitian within tolerance");
  matrix_ = dense::symmetrize(m);
}

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  require(amplitudes_.size() >= 1, ErrorCode::kInvalidInput,
          "pure state needs dimension >= 1");
  require(std::abs(amplitudes_.norm() - 1.0) <= kTolNorm,
          ErrorCode::kInvalidInput, "pure state is not normalized");
}

PureState PureState::basis(int dim, int index) {
  require(dim >= 1 && index >= 0 && index < dim, ErrorCode::kInvalidInput,
          "basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

Matrix PureState::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

DensityMatrix::DensityMatrix(Matrix m) {
  const HermitianOperator h(std::move(m));
  const RealVector lambdas = dense::eigvalsh(h.matrix());
  require(lambdas.minCoeff() >= -kTolPsd, ErrorCode::kInvalidInput,
          "density matrix has a negative eigenvalue");
  require(std::abs(h.matrix().trace().real() - 1.0) <= kTolPsd,
          ErrorCode::kInvalidInput, "density matrix does not have unit trace");
  matrix_ = h.matrix();
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  require(dim >= 1, ErrorCode::kInvalidInput, "dimension must be >= 1");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis(int dim, int index) {
  return DensityMatrix(PureState::basis(dim, index));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& weights) {
  require(!weights.empty(), ErrorCode::kInvalidInput, "empty weight vector");
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(weights.size()),
                          static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = weights[i];
  }
  return DensityMatrix(std::move(m));
}

HermitianOperator positive_part(const HermitianOperator& h) {
  return HermitianOperator(dense::positive_part(h.matrix()));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::clamp(dense::trace_distance(rho.matrix(), sigma.matrix()), 0.0,
                    1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return dense::fidelity(rho.matrix(), sigma.matrix());
}

double hockey_stick(const DensityMatrix& rho, const DensityMatrix& sigma,
                    double gamma) {
  return std::clamp(dense::hockey_stick(rho.matrix(), sigma.matrix(), gamma),
                    0.0, 1.0);
}

PureState random_pure(int dim, Rng& rng) {
  require(dim >= 1, ErrorCode::kInvalidInput, "dimension must be >= 1");
  Vector v = dense::gaussian_matrix(dim, 1, rng).col(0);
  v /= v.norm();
  return PureState(std::move(v));
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  require(dim >= 1 && rank >= 1 && rank <= dim, ErrorCode::kInvalidInput,
          "random_density needs 1 <= rank <= dim");
  std::exponential_distribution<double> gamma1(1.0);
  std::vector<double> weights(static_cast<std::size_t>(rank));
  double total = 0.0;
  for (double& w : weights) {
    w = gamma1(rng);
    total += w;
  }
  Matrix rho = Matrix::Zero(dim, dim);
  for (double w : weights) {
    rho += (w / total) * random_pure(dim, rng).projector();
  }
  rho /= rho.trace().real();
  return DensityMatrix(dense::symmetrize(rho));
}

}  // namespace qldp
