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


// Pauli strings, Pauli decompositions of observables, and dense Clifford
// unitaries for up to four qubits.

#ifndef QLDP_PAULI_HPP_
#define QLDP_PAULI_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qldp/channels.hpp"

namespace qldp {

inline constexpr int kMaxQubits = 4;

int qubits_for_dim(int dim);  // throws kInvalidInput unless dim = 2^m, m <= 4

// Letters over {I, X, Y, Z}; the first letter acts on the leftmost tensor
// factor.
class PauliLabel {
 public:
  explicit PauliLabel(std::string letters);
  // Base-4 digits I=0, X=1, Y=2, Z=3, first letter most significant.
  static PauliLabel from_index(int qubits, std::uint32_t index);

  int qubits() const { return static_cast<int>(letters_.size()); }
  std::uint32_t index() const;
  const std::string& str() const { return letters_; }

  auto operator<=>(const PauliLabel&) const = default;

 private:
  std::string letters_;
};

HermitianOperator pauli_matrix(const PauliLabel& label);

struct PauliTerm {
  PauliLabel label;
  double coeff = 0.0;
};

class PauliDecomposition {
 public:
  // Terms with duplicate labels are rejected; zero coefficients dropped.
  static PauliDecomposition from_terms(int qubits, std::vector<PauliTerm> terms);

  int qubits() const { return qubits_; }
  int dim() const { return 1 << qubits_; }
  // Nonzero terms, ascending label index.
  const std::vector<PauliTerm>& terms() const { return terms_; }
  double coefficient(const PauliLabel& label) const;
  // S = sum |alpha_P|.
  double weight() const { return weight_; }
  double lambda_max() const { return lambda_max_; }
  double lambda_min() const { return lambda_min_; }

  Matrix reconstruct() const;

  // Index into terms() drawn with probability |alpha_P| / S.
  std::size_t sample_term(Rng& rng) const;

 private:
  PauliDecomposition() = default;
  // Sorts terms and fills the weight, sampler table and spectral data.
  void finalize(const Matrix& o);

  int qubits_ = 0;
  std::vector<PauliTerm> terms_;
  std::vector<double> cumulative_;
  double weight_ = 0.0;
  double lambda_max_ = 0.0;
  double lambda_min_ = 0.0;

  friend PauliDecomposition decompose(const HermitianOperator& o, int qubits);
};

// alpha_P = Tr[P O] / 2^m. Coefficients below 1e-14 in magnitude are
// treated as zero.
PauliDecomposition decompose(const HermitianOperator& o, int qubits);

// Throws kDegenerateObservable when S = 0.
PauliLabel sample_pauli(const PauliDecomposition& decomp, Rng& rng);

// True when m = c P for a Pauli string P and c in {1, -1, i, -i}.
bool is_signed_pauli(const Matrix& m, int qubits, double tol = kTolIdentity);

class CliffordElement {
 public:
  // Checks unitarity and that conjugation maps every X_j and Z_j (which
  // generate the Pauli group) to a signed Pauli.
  explicit CliffordElement(Matrix u);

  int qubits() const { return qubits_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  struct Trusted {};
  CliffordElement(Trusted, int qubits, Matrix u)
      : qubits_(qubits), matrix_(std::move(u)) {}

  int qubits_ = 0;
  Matrix matrix_;

  friend const std::vector<CliffordElement>& enumerate_cliffords(int qubits);
  friend CliffordElement random_clifford(int qubits, Rng& rng);
};

// Hadamard and phase gate on each qubit, CNOT on each ordered pair of
// neighbouring qubits.
std::vector<Matrix> clifford_generators(int qubits);

// Whole group up to global phase, phase-canonical, for m in {1, 2}
// (24 and 11520 elements). Built once and shared.
const std::vector<CliffordElement>& enumerate_cliffords(int qubits);

// Uniform index into enumerate_cliffords(m), m in {1, 2}.
std::size_t random_clifford_index(int qubits, Rng& rng);

// m in {1, 2}: exactly uniform via the enumeration. m in {3, 4}: product of
// kRandomCliffordDepth uniformly chosen generators, which is only
// approximately uniform.
CliffordElement random_clifford(int qubits, Rng& rng);
inline constexpr int kRandomCliffordDepth = 50;

// The enumerated group as a closure-checked FiniteUnitaryGroup.
FiniteUnitaryGroup clifford_group(int qubits);

}  // namespace qldp

#endif  // QLDP_PAULI_HPP_
