// Copyright 2026 The pdlent Authors
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

#pragma once

// Two-qubit linear algebra kernel and state metrics.
//
// Basis ordering is |HH>, |HV>, |VH>, |VV> with qubit A the left tensor
// factor and |H> = (1, 0). Pauli matrices follow the usual convention, so
// sigma_3 = diag(1, -1) and an H-aligned Stokes vector is (0, 0, 1).

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace pdlent {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

enum class Qubit { A, B };

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellKind, 4> kAllBellKinds = {
    BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus};

/// sigma_0 (identity) for j = 0, sigma_1..3 for j = 1..3.
const Mat2& pauli(int j);

Mat4 kron(const Mat2& a, const Mat2& b);
Vec4 kron(const Vec2& a, const Vec2& b);

/// Eigenvalues of a 4x4 matrix whose spectrum is real (Hermitian matrices, or
/// products such as rho * rho~), sorted descending. Hermitian inputs go
/// through the self-adjoint solver; anything else through the general complex
/// solver, keeping real parts. Magnitudes below 1e-12 are returned as 0.
std::array<double, 4> eigvals_desc(const Mat4& m);

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix.
class DensityMatrix4 {
   public:
    /// Symmetrizes (m + m^dagger)/2 after checking m is Hermitian, unit trace
    /// and PSD within `tol`. Throws DomainError otherwise.
    static DensityMatrix4 from_matrix(const Mat4& m, double tol = 1e-9);
    /// |psi><psi| for a normalized psi.
    static DensityMatrix4 from_pure(const Vec4& psi);

    const Mat4& mat() const { return mat_; }
    Complex operator()(int i, int j) const { return mat_(i, j); }

   private:
    explicit DensityMatrix4(Mat4 m) : mat_(std::move(m)) {}
    Mat4 mat_;
};

/// Single-qubit density matrix, same invariants as DensityMatrix4.
class QubitState {
   public:
    static QubitState from_matrix(const Mat2& m, double tol = 1e-9);

    const Mat2& mat() const { return mat_; }
    Complex operator()(int i, int j) const { return mat_(i, j); }

   private:
    explicit QubitState(Mat2 m) : mat_(std::move(m)) {}
    Mat2 mat_;
};

/// Diagonal of the correlation matrix T, t_j = Tr[rho sigma_j (x) sigma_j].
class CorrelationT {
   public:
    /// Throws DomainError if any |t_j| > 1 + 1e-9.
    CorrelationT(double t1, double t2, double t3);

    double t1() const { return t_[0]; }
    double t2() const { return t_[1]; }
    double t3() const { return t_[2]; }
    /// j in {1, 2, 3}.
    double t(int j) const { return t_.at(static_cast<std::size_t>(j - 1)); }
    const std::array<double, 3>& values() const { return t_; }

    /// All |t_j| equal to 1 within `tol`, i.e. a pure Bell state.
    bool is_bell(double tol = 1e-9) const;

   private:
    std::array<double, 3> t_;
};

/// Weights of Phi+, Phi-, Psi+, Psi- in the Bell-diagonal state with
/// correlation `t` (the eigenvalues of bell_diagonal(t)).
std::array<double, 4> bell_weights(const CorrelationT& t);

Vec4 bell_vector(BellKind kind);
DensityMatrix4 bell_state(BellKind kind);

/// rho = 1/4 (I + sum_j t_j sigma_j (x) sigma_j). Throws DomainError when a
/// Bell weight is below -1e-9.
DensityMatrix4 bell_diagonal(const CorrelationT& t);

/// v |Phi+><Phi+| + (1 - v) I/4 for v in [0, 1].
DensityMatrix4 werner(double v);

CorrelationT correlation_of(const DensityMatrix4& rho);

/// Wootters concurrence, evaluated as the singular values of W^T (sigma_2 (x)
/// sigma_2) W for rho = W W^dagger; these are the square roots of the
/// eigenvalues of rho * rho~.
double concurrence(const DensityMatrix4& rho);

double purity(const DensityMatrix4& rho);

/// Partial trace keeping `which`.
QubitState reduced_qubit(const DensityMatrix4& rho, Qubit which);

/// 2 (1 - Tr q^2): 0 for pure states, 1 for I/2.
double linear_entropy(const QubitState& q);

/// <psi|rho|psi>. Throws DomainError unless |psi| = 1 within 1e-9.
double fidelity_to_pure(const DensityMatrix4& rho, const Vec4& psi);

/// (1/2) || a - b ||_1 for Hermitian a, b.
double trace_distance(const Mat4& a, const Mat4& b);

}  // namespace pdlent
