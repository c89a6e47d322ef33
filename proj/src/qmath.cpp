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

#include "pdlent/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "pdlent/errors.hpp"

namespace pdlent {
namespace {

constexpr double kEigZero = 1e-12;
// Eigenvalues of rho below this are rounding noise on a rank-deficient state.
constexpr double kRankFloor = 1e-14;

const std::array<Mat2, 4> kPauli = [] {
    std::array<Mat2, 4> p;
    const Complex i{0.0, 1.0};
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -i, i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
}();

template <typename M>
bool all_finite(const M& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) return false;
        }
    }
    return true;
}

template <typename M>
double hermitian_defect(const M& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename M>
M validated_state(const M& m, double tol, const char* what) {
    if (!all_finite(m)) throw DomainError(std::string(what) + ": non-finite entry");
    if (hermitian_defect(m) > tol) throw DomainError(std::string(what) + ": not Hermitian");
    M h = (m + m.adjoint()) * 0.5;
    Complex tr = h.trace();
    if (std::abs(tr.real() - 1.0) > tol) {
        throw DomainError(std::string(what) + ": trace " + std::to_string(tr.real()) + " != 1");
    }
    Eigen::SelfAdjointEigenSolver<M> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError(std::string(what) + ": eigensolver failed");
    if (es.eigenvalues().minCoeff() < -tol) {
        throw DomainError(std::string(what) + ": negative eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()));
    }
    return h;
}

std::array<double, 4> sorted_desc(std::array<double, 4> v) {
    for (double& x : v) {
        if (std::abs(x) < kEigZero) x = 0.0;
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

}  // namespace

const Mat2& pauli(int j) { return kPauli.at(static_cast<std::size_t>(j)); }

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

Vec4 kron(const Vec2& a, const Vec2& b) {
    Vec4 out;
    out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return out;
}

std::array<double, 4> eigvals_desc(const Mat4& m) {
    std::array<double, 4> out{};
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (hermitian_defect(m) <= 1e-12 * scale) {
        Eigen::SelfAdjointEigenSolver<Mat4> es((m + m.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw SolverError("eigvals_desc: self-adjoint solver failed");
        for (int k = 0; k < 4; ++k) out[k] = es.eigenvalues()(k);
    } else {
        Eigen::ComplexEigenSolver<Mat4> es(m, false);
        if (es.info() != Eigen::Success) throw SolverError("eigvals_desc: complex solver failed");
        for (int k = 0; k < 4; ++k) out[k] = es.eigenvalues()(k).real();
    }
    return sorted_desc(out);
}

DensityMatrix4 DensityMatrix4::from_matrix(const Mat4& m, double tol) {
    return DensityMatrix4(validated_state(m, tol, "DensityMatrix4"));
}

DensityMatrix4 DensityMatrix4::from_pure(const Vec4& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-9) throw DomainError("DensityMatrix4: state vector not normalized");
    return from_matrix(psi * psi.adjoint());
}

QubitState QubitState::from_matrix(const Mat2& m, double tol) {
    return QubitState(validated_state(m, tol, "QubitState"));
}

CorrelationT::CorrelationT(double t1, double t2, double t3) : t_{t1, t2, t3} {
    for (double t : t_) {
        if (!std::isfinite(t) || std::abs(t) > 1.0 + 1e-9) {
            throw DomainError("CorrelationT: |t_j| must not exceed 1");
        }
    }
}

bool CorrelationT::is_bell(double tol) const {
    return std::all_of(t_.begin(), t_.end(), [tol](double t) { return std::abs(std::abs(t) - 1.0) <= tol; });
}

std::array<double, 4> bell_weights(const CorrelationT& t) {
    const double a = t.t1(), b = t.t2(), c = t.t3();
    return {(1 + a - b + c) / 4, (1 - a + b + c) / 4, (1 + a + b - c) / 4, (1 - a - b - c) / 4};
}

Vec4 bell_vector(BellKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    Vec4 v = Vec4::Zero();
    switch (kind) {
        case BellKind::PhiPlus: v << s, 0, 0, s; break;
        case BellKind::PhiMinus: v << s, 0, 0, -s; break;
        case BellKind::PsiPlus: v << 0, s, s, 0; break;
        case BellKind::PsiMinus: v << 0, s, -s, 0; break;
    }
    return v;
}

DensityMatrix4 bell_state(BellKind kind) { return DensityMatrix4::from_pure(bell_vector(kind)); }

DensityMatrix4 bell_diagonal(const CorrelationT& t) {
    for (double w : bell_weights(t)) {
        if (w < -1e-9) throw DomainError("bell_diagonal: correlation triple is unphysical");
    }
    Mat4 m = Mat4::Identity();
    for (int j = 1; j <= 3; ++j) m += t.t(j) * kron(pauli(j), pauli(j));
    return DensityMatrix4::from_matrix(m / 4.0);
}

DensityMatrix4 werner(double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("werner: visibility outside [0, 1]");
    return bell_diagonal(CorrelationT(v, -v, v));
}

CorrelationT correlation_of(const DensityMatrix4& rho) {
    std::array<double, 3> t{};
    for (int j = 1; j <= 3; ++j) {
        t[j - 1] = (rho.mat() * kron(pauli(j), pauli(j))).trace().real();
    }
    return CorrelationT(t[0], t[1], t[2]);
}

double concurrence(const DensityMatrix4& rho) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho.mat());
    if (es.info() != Eigen::Success) throw SolverError("concurrence: eigensolver failed");
    // W = V diag(sqrt(mu)) with rho = W W^dagger.
    Mat4 w = es.eigenvectors();
    for (int k = 0; k < 4; ++k) {
        const double mu = es.eigenvalues()(k);
        w.col(k) *= mu > kRankFloor ? std::sqrt(mu) : 0.0;
    }
    const Mat4 yy = kron(pauli(2), pauli(2));
    const Mat4 tau = w.transpose() * yy * w;
    Eigen::JacobiSVD<Mat4> svd(tau);
    const auto& s = svd.singularValues();  // descending, = sqrt(lambda_i)
    return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double purity(const DensityMatrix4& rho) { return (rho.mat() * rho.mat()).trace().real(); }

QubitState reduced_qubit(const DensityMatrix4& rho, Qubit which) {
    Mat2 r = Mat2::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                r(i, j) += which == Qubit::A ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
            }
        }
    }
    return QubitState::from_matrix(r);
}

double linear_entropy(const QubitState& q) { return 2.0 * (1.0 - (q.mat() * q.mat()).trace().real()); }

double fidelity_to_pure(const DensityMatrix4& rho, const Vec4& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-9) throw DomainError("fidelity_to_pure: psi not normalized");
    return (psi.adjoint() * rho.mat() * psi)(0, 0).real();
}

double trace_distance(const Mat4& a, const Mat4& b) {
    const Mat4 d = a - b;
    Eigen::SelfAdjointEigenSolver<Mat4> es((d + d.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("trace_distance: eigensolver failed");
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace pdlent
