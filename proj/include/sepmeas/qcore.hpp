// Copyright 2026 The sepmeas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sepmeas {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Default tolerances. Dimensions stay small (<= ~64), so these sit well
// above double-precision accumulation error and well below any meaningful
// violation.
namespace tol {
inline constexpr double herm = 1e-8;   // Frobenius norm of m - m^dagger
inline constexpr double sum = 1e-8;    // Frobenius norm of sum(M_b) - I
inline constexpr double psd = 1e-9;    // absolute eigenvalue floor
inline constexpr double trace = 1e-9;  // |Tr(rho) - 1|
inline constexpr double prob = 1e-9;   // probability normalization
}  // namespace tol

/// Invariant violations and numerical-validity failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest text for a double at 12 significant digits ("%.12g").
std::string format_g12(double x);

/// Kronecker product with row (i_a*rows_b + i_b), col (j_a*cols_b + j_b).
CMatrix tensor(const CMatrix& a, const CMatrix& b);

/// Kronecker product of an ordered list of factors, composed left to right.
CMatrix tensor_all(const std::vector<CMatrix>& factors);

/// Traces out every tensor factor not listed in `keep`. `dims` holds the
/// subsystem dimensions left to right and must multiply to the matrix
/// dimension; `keep` must be non-empty, strictly increasing and in range.
/// The result acts on the kept factors in their original order, and
/// Tr(result) = Tr(m).
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep);

/// (m + m^dagger)/2; idempotent on Hermitian input. Throws on non-square.
CMatrix hermitize(const CMatrix& m);

/// Eigenvalues of hermitize(m), ascending.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// Smallest eigenvalue of hermitize(m).
double min_eigenvalue(const CMatrix& m);

/// Identity of a POVM outcome: either a raw outcome index of the joint
/// measurement (empty context), or an outcome index together with the
/// context-state indices a construction fixed.
struct OutcomeLabel {
  std::vector<int> context;
  int outcome = 0;

  friend bool operator==(const OutcomeLabel&, const OutcomeLabel&) = default;
  friend auto operator<=>(const OutcomeLabel&, const OutcomeLabel&) = default;

  std::string str() const;
};

/// Normalized state: Hermitian, PSD and unit trace within tolerance,
/// enforced at construction. Immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix matrix);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

 private:
  CMatrix matrix_;
};

struct PovmElement {
  OutcomeLabel label;
  CMatrix matrix;
};

/// Ordered collection of measurement operators on one space. Construction
/// checks shapes and label distinctness only; positivity and completeness
/// are reported by validate_povm, so deliberately broken measurements stay
/// representable for diagnostics.
class Povm {
 public:
  Povm(int dim, std::vector<PovmElement> elements);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<PovmElement>& elements() const { return elements_; }
  const PovmElement& operator[](int b) const { return elements_[b]; }

 private:
  int dim_;
  std::vector<PovmElement> elements_;
};

struct PovmValidation {
  std::vector<double> min_eigenvalues;  // per element, after hermitization
  double completeness_residual = 0.0;   // ||sum_b M_b - I||_F
  bool psd_ok = false;
  bool complete_ok = false;

  bool passed() const { return psd_ok && complete_ok; }
  double worst_eigenvalue() const;
};

/// Reports each element's minimum eigenvalue and the completeness residual.
/// Passes iff all eigenvalues >= -tol_psd and the residual <= tol_sum.
PovmValidation validate_povm(const Povm& p, double tol_psd = tol::psd,
                             double tol_sum = tol::sum);

/// The states one subsystem may be prepared in, with prior probabilities.
class Ensemble {
 public:
  Ensemble(std::vector<DensityMatrix> states, std::vector<double> priors);

  int dim() const { return states_.front().dim(); }
  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<DensityMatrix>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }

 private:
  std::vector<DensityMatrix> states_;
  std::vector<double> priors_;
};

/// K >= 2 independently prepared subsystems plus one joint POVM on their
/// tensor product. The subsystem list order fixes the tensor factor order
/// everywhere downstream. The joint POVM must pass validate_povm.
class Scenario {
 public:
  Scenario(std::vector<Ensemble> subsystems, Povm joint_povm);

  int num_subsystems() const { return static_cast<int>(subsystems_.size()); }
  std::vector<int> dims() const;
  int joint_dim() const { return joint_povm_.dim(); }
  const std::vector<Ensemble>& subsystems() const { return subsystems_; }
  const Povm& joint_povm() const { return joint_povm_; }

 private:
  std::vector<Ensemble> subsystems_;
  Povm joint_povm_;
};

}  // namespace sepmeas
