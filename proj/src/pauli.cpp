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


#include "qldp/pauli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>

#include "qldp/group_keys.hpp"

namespace qldp {

namespace {

constexpr std::array<char, 4> kLetters = {'I', 'X', 'Y', 'Z'};
constexpr double kCoeffCutoff = 1e-14;

Matrix single_pauli(char letter) {
  Matrix p(2, 2);
  const Complex i(0.0, 1.0);
  switch (letter) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -i, i, 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

Matrix pauli_raw(const PauliLabel& label) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : label.str()) m = dense::kron(m, single_pauli(c));
  return m;
}

// Single-qubit operator `op` on qubit j (0 = leftmost) of an m-qubit system.
Matrix embed(const Matrix& op, int j, int qubits) {
  Matrix m = Matrix::Identity(1, 1);
  for (int k = 0; k < qubits; ++k) {
    m = dense::kron(m, k == j ? op : Matrix(Matrix::Identity(2, 2)));
  }
  return m;
}

Matrix cnot(int control, int target, int qubits) {
  const int d = 1 << qubits;
  Matrix m = Matrix::Zero(d, d);
  for (int x = 0; x < d; ++x) {
    const int cbit = (x >> (qubits - 1 - control)) & 1;
    const int y = cbit ? x ^ (1 << (qubits - 1 - target)) : x;
    m(y, x) = 1.0;
  }
  return m;
}

void require_qubits(int qubits, int max) {
  require(qubits >= 1 && qubits <= max, ErrorCode::kInvalidInput,
          "unsupported qubit count " + std::to_string(qubits));
}

}  // namespace

int qubits_for_dim(int dim) {
  for (int m = 1; m <= kMaxQubits; ++m) {
    if (dim == (1 << m)) return m;
  }
  fail(ErrorCode::kInvalidInput,
       "dimension " + std::to_string(dim) + " is not 2^m with 1 <= m <= 4");
}

PauliLabel::PauliLabel(std::string letters) : letters_(std::move(letters)) {
  require(!letters_.empty(), ErrorCode::kInvalidInput, "empty Pauli label");
  require(letters_.size() <= static_cast<std::size_t>(kMaxQubits),
          ErrorCode::kInvalidInput,
          "Pauli label '" + letters_ + "' exceeds " +
              std::to_string(kMaxQubits) + " qubits");
  for (char c : letters_) {
    require(std::find(kLetters.begin(), kLetters.end(), c) != kLetters.end(),
            ErrorCode::kInvalidInput,
            "Pauli label '" + letters_ + "' has a letter outside IXYZ");
  }
}

PauliLabel PauliLabel::from_index(int qubits, std::uint32_t index) {
  require(qubits >= 1 && qubits <= kMaxQubits, ErrorCode::kInvalidInput,
          "bad qubit count for a Pauli label");
  require(index < (std::uint32_t{1} << (2 * qubits)), ErrorCode::kInvalidInput,
          "Pauli index out of range");
  std::string s(static_cast<std::size_t>(qubits), 'I');
  for (int k = qubits - 1; k >= 0; --k) {
    s[static_cast<std::size_t>(k)] = kLetters[index & 3u];
    index >>= 2;
  }
  return PauliLabel(std::move(s));
}

std::uint32_t PauliLabel::index() const {
  std::uint32_t idx = 0;
  for (char c : letters_) {
    const auto pos = std::find(kLetters.begin(), kLetters.end(), c);
    idx = idx * 4 + static_cast<std::uint32_t>(pos - kLetters.begin());
  }
  return idx;
}

HermitianOperator pauli_matrix(const PauliLabel& label) {
  return HermitianOperator(pauli_raw(label));
}

void PauliDecomposition::finalize(const Matrix& o) {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) {
              return a.label.index() < b.label.index();
            });
  weight_ = 0.0;
  cumulative_.clear();
  for (const PauliTerm& t : terms_) {
    weight_ += std::abs(t.coeff);
    cumulative_.push_back(weight_);
  }
  const RealVector ev = dense::eigvalsh(o);
  lambda_min_ = ev(0);
  lambda_max_ = ev(ev.size() - 1);
}

PauliDecomposition decompose(const HermitianOperator& o, int qubits) {
  require_qubits(qubits, kMaxQubits);
  require(o.dim() == (1 << qubits), ErrorCode::kInvalidInput,
          "observable dimension is not 2^m");
  PauliDecomposition d;
  d.qubits_ = qubits;
  const double scale = 1.0 / static_cast<double>(o.dim());
  const auto count = std::uint32_t{1} << (2 * qubits);
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    PauliLabel label = PauliLabel::from_index(qubits, idx);
    const Complex tr = (pauli_raw(label) * o.matrix()).trace();
    const double alpha = tr.real() * scale;
    if (std::abs(alpha) > kCoeffCutoff) d.terms_.push_back({label, alpha});
  }
  d.finalize(o.matrix());
  return d;
}

PauliDecomposition PauliDecomposition::from_terms(int qubits,
                                                  std::vector<PauliTerm> terms) {
  require_qubits(qubits, kMaxQubits);
  PauliDecomposition d;
  d.qubits_ = qubits;
  for (PauliTerm& t : terms) {
    require(t.label.qubits() == qubits, ErrorCode::kInvalidInput,
            "Pauli label '" + t.label.str() + "' has the wrong length");
    require(std::isfinite(t.coeff), ErrorCode::kInvalidInput,
            "Pauli coefficient is not finite");
    for (const PauliTerm& seen : d.terms_) {
      require(!(seen.label == t.label), ErrorCode::kInvalidInput,
              "Pauli label '" + t.label.str() + "' listed twice");
    }
    if (t.coeff != 0.0) d.terms_.push_back(std::move(t));
  }
  Matrix o = Matrix::Zero(d.dim(), d.dim());
  for (const PauliTerm& t : d.terms_) o += t.coeff * pauli_raw(t.label);
  d.finalize(o);
  return d;
}

double PauliDecomposition::coefficient(const PauliLabel& label) const {
  for (const PauliTerm& t : terms_) {
    if (t.label == label) return t.coeff;
  }
  return 0.0;
}

Matrix PauliDecomposition::reconstruct() const {
  Matrix o = Matrix::Zero(dim(), dim());
  for (const PauliTerm& t : terms_) o += t.coeff * pauli_raw(t.label);
  return o;
}

std::size_t PauliDecomposition::sample_term(Rng& rng) const {
  require(weight_ > 0.0, ErrorCode::kDegenerateObservable,
          "observable has zero Pauli weight (O = 0)");
  std::uniform_real_distribution<double> u(0.0, weight_);
  const double x = u(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(idx, terms_.size() - 1);
}

PauliLabel sample_pauli(const PauliDecomposition& decomp, Rng& rng) {
  return decomp.terms()[decomp.sample_term(rng)].label;
}

bool is_signed_pauli(const Matrix& m, int qubits, double tol) {
  const int d = 1 << qubits;
  if (m.rows() != d || m.cols() != d) return false;
  const auto count = std::uint32_t{1} << (2 * qubits);
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    const Matrix p = pauli_raw(PauliLabel::from_index(qubits, idx));
    const Complex c = (p * m).trace() / static_cast<double>(d);
    if (std::abs(std::abs(c) - 1.0) > tol) continue;
    const bool quarter = std::abs(c.real()) < tol || std::abs(c.imag()) < tol;
    if (quarter && dense::max_abs_diff(m, c * p) <= tol) return true;
  }
  return false;
}

CliffordElement::CliffordElement(Matrix u) {
  qubits_ = qubits_for_dim(static_cast<int>(u.rows()));
  require(u.cols() == u.rows() && dense::is_unitary(u), ErrorCode::kInvalidInput,
          "Clifford element must be unitary");
  const Matrix x = single_pauli('X');
  const Matrix z = single_pauli('Z');
  for (int j = 0; j < qubits_; ++j) {
    for (const Matrix* g : {&x, &z}) {
      const Matrix conj = u * embed(*g, j, qubits_) * u.adjoint();
      require(is_signed_pauli(conj, qubits_), ErrorCode::kInvalidInput,
              "unitary does not map Paulis to Paulis");
    }
  }
  matrix_ = std::move(u);
}

std::vector<Matrix> clifford_generators(int qubits) {
  require_qubits(qubits, kMaxQubits);
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Matrix s(2, 2);
  s << 1, 0, 0, Complex(0.0, 1.0);
  std::vector<Matrix> gens;
  for (int j = 0; j < qubits; ++j) {
    gens.push_back(embed(h, j, qubits));
    gens.push_back(embed(s, j, qubits));
  }
  for (int j = 0; j + 1 < qubits; ++j) {
    gens.push_back(cnot(j, j + 1, qubits));
    gens.push_back(cnot(j + 1, j, qubits));
  }
  return gens;
}

const std::vector<CliffordElement>& enumerate_cliffords(int qubits) {
  require_qubits(qubits, 2);
  static std::once_flag once[2];
  static std::vector<CliffordElement> tables[2];
  const auto slot = static_cast<std::size_t>(qubits - 1);
  std::call_once(once[slot], [&] {
    const std::vector<Matrix> gens = clifford_generators(qubits);
    const int d = 1 << qubits;
    std::map<PhaseKey, std::size_t> seen;
    std::vector<CliffordElement>& out = tables[slot];
    std::deque<std::size_t> frontier;
    const Matrix id = Matrix::Identity(d, d);
    seen.emplace(phase_key(id), 0);
    out.push_back(CliffordElement(CliffordElement::Trusted{}, qubits, id));
    frontier.push_back(0);
    while (!frontier.empty()) {
      const std::size_t cur = frontier.front();
      frontier.pop_front();
      for (const Matrix& g : gens) {
        Matrix next = canonicalize_phase(out[cur].matrix() * g);
        PhaseKey key = phase_key(next);
        if (seen.count(key)) continue;
        seen.emplace(std::move(key), out.size());
        frontier.push_back(out.size());
        out.push_back(
            CliffordElement(CliffordElement::Trusted{}, qubits, std::move(next)));
      }
    }
  });
  return tables[slot];
}

std::size_t random_clifford_index(int qubits, Rng& rng) {
  const auto& table = enumerate_cliffords(qubits);
  std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
  return pick(rng);
}

CliffordElement random_clifford(int qubits, Rng& rng) {
  require_qubits(qubits, kMaxQubits);
  if (qubits <= 2) {
    return enumerate_cliffords(qubits)[random_clifford_index(qubits, rng)];
  }
  const std::vector<Matrix> gens = clifford_generators(qubits);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  const int d = 1 << qubits;
  Matrix u = Matrix::Identity(d, d);
  for (int k = 0; k < kRandomCliffordDepth; ++k) u = gens[pick(rng)] * u;
  return CliffordElement(CliffordElement::Trusted{}, qubits,
                         canonicalize_phase(u));
}

FiniteUnitaryGroup clifford_group(int qubits) {
  const auto& table = enumerate_cliffords(qubits);
  std::vector<Matrix> elems;
  elems.reserve(table.size());
  for (const CliffordElement& c : table) elems.push_back(c.matrix());
  std::vector<Matrix> gens;
  for (const Matrix& g : clifford_generators(qubits)) {
    gens.push_back(canonicalize_phase(g));
  }
  return FiniteUnitaryGroup::closed(1 << qubits, std::move(elems), gens);
}

}  // namespace qldp
