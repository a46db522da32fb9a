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

#ifndef QLDP_CHANNELS_HPP_
#define QLDP_CHANNELS_HPP_

#include <memory>
#include <mutex>
#include <vector>

#include "qldp/qops.hpp"

namespace qldp {

// CPTP map stored as a Kraus list. The superoperator (column-stacking
// convention, vec(A X B) = (B^T kron A) vec(X)) is built on first use and
// cached; copies share the cache.
class QuantumChannel {
 public:
  // Kraus operators are d_out x d_in. Throws kInvalidInput when the list is
  // empty, shapes disagree, or sum K^dagger K differs from I by more than
  // kTolIdentity.
  explicit QuantumChannel(std::vector<Matrix> kraus);

  // Rebuilds a Kraus form from the Choi matrix of `superop`.
  static QuantumChannel from_superoperator(const Matrix& superop, int dim_in,
                                           int dim_out);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  const Matrix& superoperator() const;
  // Choi matrix sum_ij |i><j| kron N(|i><j|), input factor first.
  Matrix choi() const;

  // sum_k K rho K^dagger, no validation.
  Matrix apply(const Matrix& rho) const;
  // Same action through the cached superoperator.
  Matrix apply_superoperator(const Matrix& rho) const;
  // Whichever of the two is cheaper for this Kraus count; used in search
  // inner loops.
  Matrix apply_fast(const Matrix& rho) const;

 private:
  struct Cache {
    std::once_flag once;
    Matrix superop;
  };

  int dim_in_ = 0;
  int dim_out_ = 0;
  std::vector<Matrix> kraus_;
  std::shared_ptr<Cache> cache_;
};

// Checked Kraus action; output validated as a density matrix.
DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& rho);

// Max-abs superoperator entry difference.
double channel_distance(const QuantumChannel& a, const QuantumChannel& b);
bool channels_equal(const QuantumChannel& a, const QuantumChannel& b,
                    double tol = kTolIdentity);

QuantumChannel identity_channel(int dim);

// A_p(rho) = (1 - p) rho + p Tr(rho) I / d.
QuantumChannel depolarizing(int dim, double p);

// rho -> sigma for every input of dimension dim_in.
QuantumChannel replacement_channel(int dim_in, const DensityMatrix& sigma);

// rho -> U rho U^dagger.
QuantumChannel unitary_conjugate(const Matrix& u);

// N_U = U^dagger N(U . U^dagger) U.
QuantumChannel conjugated_channel(const QuantumChannel& channel,
                                  const Matrix& u);

// Two-outcome measurement of an involution P (P^2 = I), outcomes recorded as
// |0><0| for the +1 eigenspace and |1><1| for the -1 eigenspace.
QuantumChannel pauli_measurement_channel(const HermitianOperator& p);

// Two-outcome POVM {E, I - E} recorded on a qubit; requires 0 <= E <= I.
QuantumChannel binary_measurement_channel(const HermitianOperator& effect);

// `outer` after `inner`.
QuantumChannel compose(const QuantumChannel& outer,
                       const QuantumChannel& inner);

// Random channel from a Haar-random Stinespring isometry with the given
// Kraus rank.
QuantumChannel random_channel(int dim_in, int dim_out, int kraus_rank,
                              Rng& rng);

// Uniform average over a finite set of unitaries. Stands in for the Haar
// measure of a compact group: when the set is a unitary 2-design the twirl
// of any channel coincides with the Haar twirl.
class FiniteUnitaryGroup {
 public:
  // Checks every element is a dim x dim unitary (kTolIdentity).
  FiniteUnitaryGroup(int dim, std::vector<Matrix> elements);

  // Additionally checks, up to global phase, that g * s lies in the set for
  // every element g and every s in `generators` (the generators must be
  // elements of the set). For a finite set containing the identity this is
  // closure under the generated group.
  static FiniteUnitaryGroup closed(int dim, std::vector<Matrix> elements,
                                   const std::vector<Matrix>& generators);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Matrix>& elements() const { return elements_; }
  bool closure_verified() const { return closure_verified_; }

 private:
  int dim_;
  std::vector<Matrix> elements_;
  bool closure_verified_ = false;
};

// N_G = (1/|G|) sum_g Ad(U_g^dagger) o N o Ad(U_g). Same representation on
// input and output, so N must be square.
QuantumChannel twirl(const QuantumChannel& channel,
                     const FiniteUnitaryGroup& group);

// Best depolarizing fit of a square channel: p minimizing the superoperator
// distance, together with the residual max-abs entry difference.
struct DepolarizingFit {
  double p = 0.0;
  double residual = 0.0;
};
DepolarizingFit fit_depolarizing(const QuantumChannel& channel);

}  // namespace qldp

#endif  // QLDP_CHANNELS_HPP_
