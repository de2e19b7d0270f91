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

#include "sepmeas/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace sepmeas {

namespace {

long long checked_product(const std::vector<int>& dims) {
  long long prod = 1;
  for (int d : dims) {
    if (d < 1) throw Error("subsystem dimension must be >= 1");
    prod *= d;
  }
  return prod;
}

}  // namespace

std::string format_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix tensor_all(const std::vector<CMatrix>& factors) {
  if (factors.empty()) throw Error("tensor_all: no factors");
  CMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
  if (m.rows() != m.cols()) throw Error("partial_trace: matrix must be square");
  const long long total = checked_product(dims);
  if (total != m.rows()) {
    std::ostringstream os;
    os << "partial_trace: product of dims (" << total << ") != matrix dimension ("
       << m.rows() << ")";
    throw Error(os.str());
  }
  if (keep.empty()) throw Error("partial_trace: keep set must be non-empty");
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw Error("partial_trace: keep indices must be strictly increasing");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw Error("partial_trace: keep index out of range");

  const int n = static_cast<int>(dims.size());
  // Row-major composite index: subsystem 0 is the slowest digit.
  std::vector<long long> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<int> traced;
  for (int k = 0; k < n; ++k)
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);

  // Flat offsets of every kept-digit combination and every traced-digit
  // combination, odometer order (leftmost subsystem slowest).
  auto offsets = [&](const std::vector<int>& subs) {
    long long count = 1;
    for (int k : subs) count *= dims[k];
    std::vector<long long> off(static_cast<std::size_t>(count), 0);
    std::vector<int> digit(subs.size(), 0);
    for (long long i = 0; i < count; ++i) {
      long long o = 0;
      for (std::size_t t = 0; t < subs.size(); ++t) o += digit[t] * stride[subs[t]];
      off[static_cast<std::size_t>(i)] = o;
      for (int t = static_cast<int>(subs.size()) - 1; t >= 0; --t) {
        if (++digit[t] < dims[subs[t]]) break;
        digit[t] = 0;
      }
    }
    return off;
  };
  const std::vector<long long> keep_off = offsets(keep);
  const std::vector<long long> tr_off = offsets(traced);

  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  CMatrix out = CMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc(0.0, 0.0);
      for (long long t : tr_off) acc += m(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = acc;
    }
  return out;
}

CMatrix hermitize(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error("hermitize: matrix must be square");
  return 0.5 * (m + m.adjoint());
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error("hermitian_eigenvalues: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double min_eigenvalue(const CMatrix& m) { return hermitian_eigenvalues(m).front(); }

std::string OutcomeLabel::str() const {
  std::ostringstream os;
  if (context.empty()) {
    os << outcome;
  } else {
    os << "(";
    for (std::size_t i = 0; i < context.size(); ++i) {
      if (i > 0) os << ",";
      os << context[i];
    }
    os << "|" << outcome << ")";
  }
  return os.str();
}

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
    throw Error("density matrix must be square and non-empty");
  if ((matrix_ - matrix_.adjoint()).norm() > tol::herm)
    throw Error("density matrix is not Hermitian within tolerance");
  const Complex tr = matrix_.trace();
  if (std::abs(tr.real() - 1.0) > tol::trace || std::abs(tr.imag()) > tol::trace)
    throw Error("density matrix trace differs from 1");
  if (min_eigenvalue(matrix_) < -tol::psd)
    throw Error("density matrix has a negative eigenvalue beyond tolerance");
}

Povm::Povm(int dim, std::vector<PovmElement> elements)
    : dim_(dim), elements_(std::move(elements)) {
  if (dim_ < 1) throw Error("POVM dimension must be >= 1");
  if (elements_.empty()) throw Error("POVM must have at least one element");
  for (const auto& el : elements_)
    if (el.matrix.rows() != dim_ || el.matrix.cols() != dim_)
      throw Error("POVM element shape does not match the declared dimension");
  std::set<OutcomeLabel> seen;
  for (const auto& el : elements_)
    if (!seen.insert(el.label).second)
      throw Error("duplicate POVM outcome label " + el.label.str());
}

double PovmValidation::worst_eigenvalue() const {
  return *std::min_element(min_eigenvalues.begin(), min_eigenvalues.end());
}

PovmValidation validate_povm(const Povm& p, double tol_psd, double tol_sum) {
  PovmValidation v;
  CMatrix sum = CMatrix::Zero(p.dim(), p.dim());
  v.min_eigenvalues.reserve(p.size());
  for (const auto& el : p.elements()) {
    v.min_eigenvalues.push_back(min_eigenvalue(el.matrix));
    sum += el.matrix;
  }
  v.completeness_residual = (sum - CMatrix::Identity(p.dim(), p.dim())).norm();
  v.psd_ok = v.worst_eigenvalue() >= -tol_psd;
  v.complete_ok = v.completeness_residual <= tol_sum;
  return v;
}

Ensemble::Ensemble(std::vector<DensityMatrix> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.empty()) throw Error("ensemble must contain at least one state");
  if (states_.size() != priors_.size())
    throw Error("ensemble states and priors differ in length");
  for (const auto& s : states_)
    if (s.dim() != states_.front().dim())
      throw Error("ensemble states do not share one dimension");
  double sum = 0.0;
  for (double p : priors_) {
    if (p < 0.0) throw Error("ensemble prior is negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::prob)
    throw Error("ensemble priors do not sum to 1 within tolerance");
}

Scenario::Scenario(std::vector<Ensemble> subsystems, Povm joint_povm)
    : subsystems_(std::move(subsystems)), joint_povm_(std::move(joint_povm)) {
  if (subsystems_.size() < 2) throw Error("scenario requires K >= 2 subsystems");
  long long prod = 1;
  for (const auto& e : subsystems_) prod *= e.dim();
  if (prod != joint_povm_.dim()) {
    std::ostringstream os;
    os << "joint POVM dimension " << joint_povm_.dim()
       << " does not match the product of subsystem dimensions " << prod;
    throw Error(os.str());
  }
  const PovmValidation v = validate_povm(joint_povm_);
  if (!v.passed()) {
    std::ostringstream os;
    os << "joint POVM is invalid: min eigenvalue " << v.worst_eigenvalue()
       << ", completeness residual " << v.completeness_residual;
    throw Error(os.str());
  }
}

std::vector<int> Scenario::dims() const {
  std::vector<int> d;
  d.reserve(subsystems_.size());
  for (const auto& e : subsystems_) d.push_back(e.dim());
  return d;
}

}  // namespace sepmeas
