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

#include "qlan/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qlan/errors.hpp"

namespace qlan {

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream msg;
        msg << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw ValidationError(msg.str());
    }
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix &m) {
    require_square(m, "HermitianMatrix");
    double scale = m.cwiseAbs().maxCoeff();
    double worst = 0;
    Eigen::Index wr = 0, wc = 0;
    for (Eigen::Index c = 0; c < m.cols(); c++) {
        for (Eigen::Index r = 0; r <= c; r++) {
            double d = std::abs(m(r, c) - std::conj(m(c, r)));
            if (d > worst) {
                worst = d;
                wr = r;
                wc = c;
            }
        }
    }
    if (worst > kHermitianTolerance * std::max(scale, 1e-300)) {
        std::ostringstream msg;
        msg.precision(3);
        msg << "matrix is not Hermitian: entry (" << wr << "," << wc << ") differs from the conjugate of ("
            << wc << "," << wr << ") by " << worst << " (max entry magnitude " << scale << ")";
        throw ValidationError(msg.str());
    }
    m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::trusted(const ComplexMatrix &m) {
    require_square(m, "HermitianMatrix");
    HermitianMatrix h;
    h.m_ = (m + m.adjoint()) * 0.5;
    return h;
}

EigenSystem hermitian_eig(const HermitianMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw ValidationError("hermitian_eig: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const HermitianMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ValidationError("hermitian_eigenvalues: eigensolver did not converge");
    }
    return solver.eigenvalues();
}

ComplexMatrix unitary_exp(const HermitianMatrix &h) {
    EigenSystem es = hermitian_eig(h);
    ComplexVector phases(es.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); k++) {
        phases[k] = std::polar(1.0, es.eigenvalues[k]);
    }
    return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

static bool is_hermitian(const ComplexMatrix &a) {
    double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTolerance * scale;
}

double trace_norm(const HermitianMatrix &a) {
    return hermitian_eigenvalues(a).cwiseAbs().sum();
}

double trace_norm(const ComplexMatrix &a) {
    require_square(a, "trace_norm");
    if (is_hermitian(a)) {
        return trace_norm(HermitianMatrix::trusted(a));
    }
    Eigen::BDCSVD<ComplexMatrix> svd(a);
    return svd.singularValues().sum();
}

double require_psd(const HermitianMatrix &h, const char *what) {
    double lo = hermitian_eigenvalues(h)[0];
    if (lo < kEigenvalueReject) {
        std::ostringstream msg;
        msg << what << ": matrix is not positive semidefinite (min eigenvalue " << lo << ")";
        throw ValidationError(msg.str());
    }
    return lo;
}

static ComplexMatrix psd_sqrt(const HermitianMatrix &h) {
    EigenSystem es = hermitian_eig(h);
    if (es.eigenvalues[0] < kEigenvalueReject) {
        std::ostringstream msg;
        msg << "fidelity: matrix is not positive semidefinite (min eigenvalue " << es.eigenvalues[0] << ")";
        throw ValidationError(msg.str());
    }
    RealVector r = es.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors * r.asDiagonal() * es.eigenvectors.adjoint();
}

double fidelity(const HermitianMatrix &rho, const HermitianMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ValidationError("fidelity: dimension mismatch");
    }
    require_psd(sigma, "fidelity");
    ComplexMatrix s = psd_sqrt(rho);
    HermitianMatrix m = HermitianMatrix::trusted(s * sigma.matrix() * s);
    RealVector ev = hermitian_eigenvalues(m);
    double f = 0;
    for (Eigen::Index k = 0; k < ev.size(); k++) {
        f += std::sqrt(std::max(ev[k], 0.0));
    }
    return std::min(f, 1.0);
}

double pure_state_trace_distance(const ComplexVector &a, const ComplexVector &b) {
    if (a.size() != b.size()) {
        throw ValidationError("pure_state_trace_distance: dimension mismatch");
    }
    ComplexVector ua = a / a.norm();
    ComplexVector ub = b / b.norm();
    ComplexVector orth = ub - ua.dot(ub) * ua;
    return 2 * std::min(orth.norm(), 1.0);
}

}  // namespace qlan
