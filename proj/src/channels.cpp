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

#include "qldp/channels.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "qldp/group_keys.hpp"

namespace qldp {

namespace {

// Choi eigenvalues below this are treated as numerical zero.
constexpr double kChoiCutoff = 1e-14;

void require_square(const QuantumChannel& channel, const char* what) {
  require(channel.dim_in() == channel.dim_out(), ErrorCode::kInvalidInput,
          std::string(what) + " needs equal input and output dimensions");
}

// Measure-and-record channel for a two-outcome POVM {e0, e1}.
QuantumChannel two_outcome_channel(const Matrix& e0, const Matrix& e1) {
  const int d = static_cast<int>(e0.rows());
  const Matrix roots[2] = {dense::sqrt_psd(e0), dense::sqrt_psd(e1)};
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(2 * d));
  for (int outcome = 0; outcome < 2; ++outcome) {
    for (int i = 0; i < d; ++i) {
      Matrix k = Matrix::Zero(2, d);
      k.row(outcome) = roots[outcome].row(i);
      if (k.norm() > 0.0) kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(std::move(kraus));
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus)
    : kraus_(std::move(kraus)), cache_(std::make_shared<Cache>()) {
  require(!kraus_.empty(), ErrorCode::kInvalidInput,
          "channel needs at least one Kraus operator");
  dim_out_ = static_cast<int>(kraus_.front().rows());
  dim_in_ = static_cast<int>(kraus_.front().cols());
  require(dim_in_ >= 1 && dim_out_ >= 1, ErrorCode::kInvalidInput,
          "Kraus operators must be nonempty");
  Matrix gram = Matrix::Zero(dim_in_, dim_in_);
  for (const Matrix& k : kraus_) {
    require(k.rows() == dim_out_ && k.cols() == dim_in_,
            ErrorCode::kInvalidInput, "Kraus operators have mixed shapes");
    gram += k.adjoint() * k;
  }
  require(dense::max_abs_diff(gram, Matrix::Identity(dim_in_, dim_in_)) <=
              kTolIdentity,
          ErrorCode::kInvalidInput,
          "Kraus operators are not trace preserving");
}

QuantumChannel QuantumChannel::from_superoperator(const Matrix& superop,
                                                  int dim_in, int dim_out) {
  require(superop.rows() == dim_out * dim_out &&
              superop.cols() == dim_in * dim_in,
          ErrorCode::kInvalidInput, "superoperator has the wrong shape");
  // J((i,a),(j,b)) = N(|i><j|)(a,b) = S(b*d_out + a, j*d_in + i).
  Matrix choi(dim_in * dim_out, dim_in * dim_out);
  for (int i = 0; i < dim_in; ++i) {
    for (int j = 0; j < dim_in; ++j) {
      for (int a = 0; a < dim_out; ++a) {
        for (int b = 0; b < dim_out; ++b) {
          choi(i * dim_out + a, j * dim_out + b) =
              superop(b * dim_out + a, j * dim_in + i);
        }
      }
    }
  }
  const Spectrum s = dense::eigh(choi);
  require(s.values.minCoeff() >= -1e-9, ErrorCode::kInvalidInput,
          "superoperator is not completely positive");
  const double cutoff = kChoiCutoff * std::max(1.0, s.values.maxCoeff());
  std::vector<Matrix> kraus;
  for (Eigen::Index k = s.values.size() - 1; k >= 0; --k) {
    const double lambda = s.values(k);
    if (lambda <= cutoff) continue;
    Matrix op(dim_out, dim_in);
    for (int i = 0; i < dim_in; ++i) {
      for (int a = 0; a < dim_out; ++a) {
        op(a, i) = std::sqrt(lambda) * s.vectors(i * dim_out + a, k);
      }
    }
    kraus.push_back(std::move(op));
  }
  return QuantumChannel(std::move(kraus));
}

const Matrix& QuantumChannel::superoperator() const {
  std::call_once(cache_->once, [this] {
    Matrix s = Matrix::Zero(dim_out_ * dim_out_, dim_in_ * dim_in_);
    for (const Matrix& k : kraus_) s += dense::kron(k.conjugate(), k);
    cache_->superop = std::move(s);
  });
  return cache_->superop;
}

Matrix QuantumChannel::choi() const {
  const int rows = dim_in_ * dim_out_;
  Matrix j = Matrix::Zero(rows, rows);
  Vector v(rows);
  for (const Matrix& k : kraus_) {
    for (int i = 0; i < dim_in_; ++i) {
      for (int a = 0; a < dim_out_; ++a) v(i * dim_out_ + a) = k(a, i);
    }
    j += v * v.adjoint();
  }
  return j;
}

Matrix QuantumChannel::apply(const Matrix& rho) const {
  require(rho.rows() == dim_in_ && rho.cols() == dim_in_,
          ErrorCode::kInvalidInput,
          "input dimension " + std::to_string(rho.rows()) +
              " does not match channel input " + std::to_string(dim_in_));
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const Matrix& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

Matrix QuantumChannel::apply_superoperator(const Matrix& rho) const {
  require(rho.rows() == dim_in_ && rho.cols() == dim_in_,
          ErrorCode::kInvalidInput, "input dimension mismatch");
  const Eigen::Map<const Vector> vec_in(rho.data(), rho.size());
  const Vector vec_out = superoperator() * vec_in;
  return Eigen::Map<const Matrix>(vec_out.data(), dim_out_, dim_out_);
}

Matrix QuantumChannel::apply_fast(const Matrix& rho) const {
  // Kraus: ~2 K d_in d_out (d_in + d_out) flops; superoperator: d_in^2 d_out^2.
  const auto k = static_cast<long long>(kraus_.size());
  const long long kraus_cost = 2 * k * dim_in_ * dim_out_ * (dim_in_ + dim_out_);
  const long long super_cost =
      static_cast<long long>(dim_in_) * dim_in_ * dim_out_ * dim_out_;
  return kraus_cost > 2 * super_cost ? apply_superoperator(rho) : apply(rho);
}

DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& rho) {
  return DensityMatrix(dense::symmetrize(channel.apply(rho.matrix())));
}

double channel_distance(const QuantumChannel& a, const QuantumChannel& b) {
  require(a.dim_in() == b.dim_in() && a.dim_out() == b.dim_out(),
          ErrorCode::kInvalidInput, "channels have different dimensions");
  return dense::max_abs_diff(a.superoperator(), b.superoperator());
}

bool channels_equal(const QuantumChannel& a, const QuantumChannel& b,
                    double tol) {
  return channel_distance(a, b) < tol;
}

QuantumChannel identity_channel(int dim) {
  require(dim >= 1, ErrorCode::kInvalidInput, "dimension must be >= 1");
  return QuantumChannel({Matrix::Identity(dim, dim)});
}

QuantumChannel depolarizing(int dim, double p) {
  require(dim >= 2, ErrorCode::kInvalidInput,
          "depolarizing channel needs d >= 2");
  require(p >= 0.0 && p <= 1.0, ErrorCode::kInvalidInput,
          "depolarizing parameter must lie in [0, 1], got " +
              std::to_string(p));
  // sqrt(1-p) I together with sqrt(p/d) |i><j| for all i, j.
  std::vector<Matrix> kraus;
  if (p < 1.0) {
    kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(dim, dim));
  }
  if (p > 0.0) {
    const double w = std::sqrt(p / dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        Matrix k = Matrix::Zero(dim, dim);
        k(i, j) = w;
        kraus.push_back(std::move(k));
      }
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel replacement_channel(int dim_in, const DensityMatrix& sigma) {
  require(dim_in >= 1, ErrorCode::kInvalidInput, "dimension must be >= 1");
  const Spectrum s = dense::eigh(sigma.matrix());
  std::vector<Matrix> kraus;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    if (s.values(k) <= kChoiCutoff) continue;
    for (int j = 0; j < dim_in; ++j) {
      Matrix op = Matrix::Zero(sigma.dim(), dim_in);
      op.col(j) = std::sqrt(s.values(k)) * s.vectors.col(k);
      kraus.push_back(std::move(op));
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel unitary_conjugate(const Matrix& u) {
  require(dense::is_unitary(u), ErrorCode::kInvalidInput,
          "matrix is not unitary");
  return QuantumChannel({u});
}

QuantumChannel conjugated_channel(const QuantumChannel& channel,
                                  const Matrix& u) {
  require_square(channel, "conjugated_channel");
  require(dense::is_unitary(u) && u.rows() == channel.dim_in(),
          ErrorCode::kInvalidInput,
          "conjugating matrix must be a unitary of the channel dimension");
  std::vector<Matrix> kraus;
  kraus.reserve(channel.kraus().size());
  for (const Matrix& k : channel.kraus()) kraus.push_back(u.adjoint() * k * u);
  return QuantumChannel(std::move(kraus));
}

QuantumChannel pauli_measurement_channel(const HermitianOperator& p) {
  const int d = p.dim();
  const Matrix id = Matrix::Identity(d, d);
  require(dense::max_abs_diff(p.matrix() * p.matrix(), id) <= kTolIdentity,
          ErrorCode::kInvalidInput,
          "measurement observable must satisfy P^2 = I");
  return two_outcome_channel(0.5 * (id + p.matrix()),
                             0.5 * (id - p.matrix()));
}

QuantumChannel binary_measurement_channel(const HermitianOperator& effect) {
  const int d = effect.dim();
  const RealVector lambdas = dense::eigvalsh(effect.matrix());
  require(lambdas.minCoeff() >= -kTolIdentity &&
              lambdas.maxCoeff() <= 1.0 + kTolIdentity,
          ErrorCode::kInvalidInput, "POVM effect must satisfy 0 <= E <= I");
  return two_outcome_channel(effect.matrix(),
                             Matrix::Identity(d, d) - effect.matrix());
}

QuantumChannel compose(const QuantumChannel& outer,
                       const QuantumChannel& inner) {
  require(inner.dim_out() == outer.dim_in(), ErrorCode::kInvalidInput,
          "compose: inner output dimension " +
              std::to_string(inner.dim_out()) + " != outer input dimension " +
              std::to_string(outer.dim_in()));
  std::vector<Matrix> kraus;
  kraus.reserve(outer.kraus().size() * inner.kraus().size());
  for (const Matrix& a : outer.kraus()) {
    for (const Matrix& b : inner.kraus()) kraus.push_back(a * b);
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel random_channel(int dim_in, int dim_out, int kraus_rank,
                              Rng& rng) {
  require(dim_in >= 1 && dim_out >= 1 && kraus_rank >= 1 &&
              dim_out * kraus_rank >= dim_in,
          ErrorCode::kInvalidInput,
          "random_channel needs d_out * rank >= d_in");
  const Matrix v =
      dense::orthonormalize(dense::gaussian_matrix(dim_out * kraus_rank,
                                                   dim_in, rng));
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(kraus_rank));
  for (int k = 0; k < kraus_rank; ++k) {
    kraus.push_back(v.block(k * dim_out, 0, dim_out, dim_in));
  }
  return QuantumChannel(std::move(kraus));
}

FiniteUnitaryGroup::FiniteUnitaryGroup(int dim, std::vector<Matrix> elements)
    : dim_(dim), elements_(std::move(elements)) {
  require(dim >= 1, ErrorCode::kInvalidInput, "dimension must be >= 1");
  require(!elements_.empty(), ErrorCode::kInvalidInput,
          "unitary group must be nonempty");
  for (const Matrix& u : elements_) {
    require(u.rows() == dim && dense::is_unitary(u), ErrorCode::kInvalidInput,
            "group element is not a unitary of dimension " +
                std::to_string(dim));
  }
}

FiniteUnitaryGroup FiniteUnitaryGroup::closed(
    int dim, std::vector<Matrix> elements,
    const std::vector<Matrix>& generators) {
  FiniteUnitaryGroup group(dim, std::move(elements));
  std::set<PhaseKey> keys;
  for (const Matrix& u : group.elements_) keys.insert(phase_key(u));
  require(keys.size() == group.elements_.size(), ErrorCode::kInvalidInput,
          "group lists an element twice (up to global phase)");
  for (const Matrix& s : generators) {
    require(keys.count(phase_key(s)) == 1, ErrorCode::kInvalidInput,
            "closure generator is not a group element");
    for (const Matrix& g : group.elements_) {
      require(keys.count(phase_key(g * s)) == 1, ErrorCode::kInvalidInput,
              "unitary set is not closed under multiplication");
    }
  }
  group.closure_verified_ = true;
  return group;
}

QuantumChannel twirl(const QuantumChannel& channel,
                     const FiniteUnitaryGroup& group) {
  require_square(channel, "twirl");
  require(group.dim() == channel.dim_in(), ErrorCode::kInvalidInput,
          "group dimension does not match channel");
  const Matrix& s = channel.superoperator();
  Matrix acc = Matrix::Zero(s.rows(), s.cols());
  for (const Matrix& u : group.elements()) {
    // Ad(U) has superoperator conj(U) kron U; Ad(U^dagger) has U^T kron U^dagger.
    const Matrix pre = dense::kron(u.conjugate(), u);
    const Matrix post = dense::kron(u.transpose(), u.adjoint());
    acc.noalias() += post * s * pre;
  }
  acc /= static_cast<double>(group.size());
  return QuantumChannel::from_superoperator(acc, channel.dim_in(),
                                            channel.dim_out());
}

DepolarizingFit fit_depolarizing(const QuantumChannel& channel) {
  require_square(channel, "fit_depolarizing");
  const int d = channel.dim_in();
  const int d2 = d * d;
  // S(A_p) = Id + p B with B = vec(I) vec(I)^T / d - Id.
  const Matrix id = Matrix::Identity(d2, d2);
  Vector vec_id = Vector::Zero(d2);
  for (int i = 0; i < d; ++i) vec_id(i * d + i) = 1.0;
  const Matrix b = vec_id * vec_id.transpose() / static_cast<double>(d) - id;
  const Matrix delta = channel.superoperator() - id;
  const double p = (b.adjoint() * delta).trace().real() /
                   (b.adjoint() * b).trace().real();
  return {p, dense::max_abs_diff(channel.superoperator(), id + p * b)};
}

Matrix canonicalize_phase(const Matrix& u) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      const double mag = std::abs(u(i, j));
      if (mag > 1e-9) return u * (std::conj(u(i, j)) / mag);
    }
  }
  return u;
}

PhaseKey phase_key(const Matrix& u) {
  const Matrix c = canonicalize_phase(u);
  PhaseKey key;
  key.reserve(static_cast<std::size_t>(2 * c.size() + 1));
  key.push_back(c.rows());
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      key.push_back(std::llround(c(i, j).real() * 1e8));
      key.push_back(std::llround(c(i, j).imag() * 1e8));
    }
  }
  return key;
}

}  // namespace qldp
