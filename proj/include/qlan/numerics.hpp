// Copyright 2026 The qlan Authors
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

#ifndef QLAN_NUMERICS_HPP
#define QLAN_NUMERICS_HPP

#include <complex>

#include <Eigen/Dense>

namespace qlan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Relative Hermiticity tolerance (relative to the largest entry magnitude).
constexpr double kHermitianTolerance = 1e-12;
/// Eigenvalues above this negative threshold are treated as zero for PSD inputs.
constexpr double kEigenvalueClamp = -1e-10;
/// Eigenvalues below this are rejected as not positive semidefinite.
constexpr double kEigenvalueReject = -1e-8;

/// A square complex matrix equal to its conjugate transpose.
///
/// The stored matrix is exactly Hermitian: the constructor checks the input against
/// `kHermitianTolerance` and then replaces it with (A + A^dagger) / 2.
class HermitianMatrix {
   public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix &m);

    /// Symmetrizes without checking. For matrices that are Hermitian by construction.
    static HermitianMatrix trusted(const ComplexMatrix &m);

    Eigen::Index dim() const {
        return m_.rows();
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }
    Complex operator()(Eigen::Index r, Eigen::Index c) const {
        return m_(r, c);
    }
    double trace() const {
        return m_.diagonal().real().sum();
    }

   private:
    ComplexMatrix m_;
};

/// Eigenvalues in ascending order with the matching eigenvectors as columns.
struct EigenSystem {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

EigenSystem hermitian_eig(const HermitianMatrix &h);

/// Eigenvalues only, ascending.
RealVector hermitian_eigenvalues(const HermitianMatrix &h);

/// exp(i h), computed from the eigendecomposition of h.
ComplexMatrix unitary_exp(const HermitianMatrix &h);

/// Sum of singular values. Hermitian inputs use the eigenvalue path.
double trace_norm(const ComplexMatrix &a);
double trace_norm(const HermitianMatrix &a);

/// Tr sqrt(sqrt(rho) sigma sqrt(rho)) for positive semidefinite inputs.
double fidelity(const HermitianMatrix &rho, const HermitianMatrix &sigma);

/// Trace norm of |a><a| - |b><b| for unit vectors, 2 sqrt(1 - |<a|b>|^2).
///
/// Evaluated as twice the norm of the component of b orthogonal to a, which stays
/// accurate when the two vectors nearly coincide.
double pure_state_trace_distance(const ComplexVector &a, const ComplexVector &b);

/// Throws ValidationError unless m is square.
void require_square(const ComplexMatrix &m, const char *what);

/// Smallest eigenvalue; throws ValidationError when it is below `kEigenvalueReject`.
double require_psd(const HermitianMatrix &h, const char *what);

}  // namespace qlan

#endif
