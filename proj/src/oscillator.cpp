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

#include "qlan/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qlan/errors.hpp"

namespace qlan {

static void require_dim(FockTruncation trunc, const char *what) {
    if (trunc.dim < 1) {
        throw DomainError(std::string(what) + ": truncation dimension must be positive");
    }
}

void require_mu(double mu, const char *what) {
    if (!(mu > 0.5 && mu <= 1.0)) {
        std::ostringstream msg;
        msg << what << ": mu must lie in (1/2, 1], got " << mu;
        throw DomainError(msg.str());
    }
}

FockOperator number_basis_state(int k, FockTruncation trunc) {
    require_dim(trunc, "number_basis_state");
    if (k < 0 || k >= trunc.dim) {
        std::ostringstream msg;
        msg << "number_basis_state: level " << k << " outside truncation of dimension " << trunc.dim;
        throw DomainError(msg.str());
    }
    FockOperator op{{trunc.dim, 0}, ComplexMatrix::Zero(trunc.dim, trunc.dim)};
    op.matrix(k, k) = 1;
    return op;
}

FockOperator thermal_state(double p, FockTruncation trunc) {
    require_dim(trunc, "thermal_state");
    if (!(p >= 0 && p < 1)) {
        std::ostringstream msg;
        msg << "thermal_state: p must lie in [0, 1), got " << p;
        throw DomainError(msg.str());
    }
    FockOperator op{{trunc.dim, std::pow(p, trunc.dim)}, ComplexMatrix::Zero(trunc.dim, trunc.dim)};
    double v = 1 - p;
    for (int k = 0; k < trunc.dim; k++) {
        op.matrix(k, k) = v;
        v *= p;
    }
    return op;
}

ComplexVector coherent_coefficients(Complex z, int count) {
    ComplexVector c(std::max(count, 0));
    if (count <= 0) {
        return c;
    }
    double r = std::abs(z);
    if (r == 0) {
        c.setZero();
        c[0] = 1;
        return c;
    }
    // Magnitudes in log space so large |z| does not underflow the leading terms.
    double log_r = std::log(r);
    double arg = std::arg(z);
    double half_r2 = r * r / 2;
    for (int k = 0; k < count; k++) {
        double lm = -half_r2 + k * log_r - 0.5 * std::lgamma(k + 1.0);
        c[k] = std::polar(std::exp(lm), k * arg);
    }
    return c;
}

double coherent_leakage(Complex z, int dim) {
    return std::max(0.0, 1 - coherent_coefficients(z, dim).squaredNorm());
}

int coherent_dimension(Complex z, double tolerance) {
    double r2 = std::norm(z);
    int dim = 1;
    double mass = std::exp(-r2);
    double term = mass;
    while (1 - mass > tolerance) {
        term *= r2 / dim;
        mass += term;
        dim++;
        if (dim > 1000000) {
            break;
        }
    }
    return dim;
}

FockOperator coherent_state(Complex z, FockTruncation trunc, double tolerance) {
    require_dim(trunc, "coherent_state");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("coherent_state: amplitude must be finite");
    }
    ComplexVector c = coherent_coefficients(z, trunc.dim);
    double leak = std::max(0.0, 1 - c.squaredNorm());
    if (leak > tolerance) {
        std::ostringstream msg;
        msg << "coherent_state: leakage " << leak << " above tolerance " << tolerance << " at N = " << trunc.dim
            << "; required N = " << coherent_dimension(z, tolerance);
        throw TruncationError(msg.str());
    }
    return {{trunc.dim, leak}, c * c.adjoint()};
}

int displacement_padding(Complex z) {
    return std::max(16, static_cast<int>(std::ceil(8 * std::abs(z))));
}

FockOperator displacement_operator(Displacement d, FockTruncation trunc, double tolerance) {
    require_dim(trunc, "displacement_operator");
    Complex z = d.z;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("displacement_operator: amplitude must be finite");
    }
    int n = trunc.dim;
    int big = n + displacement_padding(z);
    // D = exp(i H) with H = -i (z a^dagger - conj(z) a).
    ComplexMatrix h = ComplexMatrix::Zero(big, big);
    for (int k = 1; k < big; k++) {
        double s = std::sqrt(static_cast<double>(k));
        h(k, k - 1) = Complex(0, -1) * z * s;
        h(k - 1, k) = Complex(0, 1) * std::conj(z) * s;
    }
    ComplexMatrix full = unitary_exp(HermitianMatrix::trusted(h));
    FockOperator op{{n, 0}, full.topLeftCorner(n, n)};
    int lead = (n + 1) / 2;
    ComplexMatrix gram = op.matrix.leftCols(lead).adjoint() * op.matrix.leftCols(lead);
    double deficit = (gram - ComplexMatrix::Identity(lead, lead)).cwiseAbs().maxCoeff();
    op.trunc.tail_bound = deficit;
    if (deficit > tolerance) {
        std::ostringstream msg;
        msg << "displacement_operator: unitarity deficit " << deficit << " above tolerance " << tolerance
            << " at N = " << n << " for |z| = " << std::abs(z);
        throw TruncationError(msg.str());
    }
    return op;
}

Complex limit_displacement(LocalParam u, double mu) {
    return std::sqrt(2 * mu - 1) * u.alpha();
}

FockOperator displaced_thermal(LocalParam u, double mu, FockTruncation trunc, double tolerance) {
    require_mu(mu, "displaced_thermal");
    require_dim(trunc, "displaced_thermal");
    if (!u.finite()) {
        throw DomainError("displaced_thermal: local parameter must be finite");
    }
    FockOperator thermal = thermal_state((1 - mu) / mu, trunc);
    RealVector weights = thermal.matrix.diagonal().real();
    int n = trunc.dim;
    FockOperator op{{n, 0}, ComplexMatrix()};
    if (u.norm() == 0) {
        op.matrix = thermal.matrix;
    } else {
        // Columns whose thermal weight underflows contribute nothing.
        int used = 0;
        while (used < n && weights[used] > 0) {
            used++;
        }
        FockOperator d = displacement_operator({limit_displacement(u, mu)}, trunc, 1.0);
        ComplexMatrix scaled = d.matrix.leftCols(used) * weights.head(used).cwiseSqrt().asDiagonal();
        op.matrix = scaled * scaled.adjoint();
        op.matrix = (op.matrix + op.matrix.adjoint()) * 0.5;
    }
    double tail = std::max(0.0, 1 - op.matrix.diagonal().real().sum());
    op.trunc.tail_bound = tail;
    if (tail > tolerance) {
        std::ostringstream msg;
        msg << "displaced_thermal: trace deficit " << tail << " above tolerance " << tolerance << " at N = " << n
            << "; suggested N = " << truncation_dimension(mu, u.norm());
        throw TruncationError(msg.str());
    }
    return op;
}

int truncation_dimension(double mu, double u_max, int two_j_max) {
    require_mu(mu, "truncation_dimension");
    int dim = two_j_max + 1;
    double p = (1 - mu) / mu;
    if (p > 0) {
        int thermal = static_cast<int>(std::ceil(std::log(1e-8) / std::log(p)));
        // Strict inequality p^N < 1e-8.
        if (std::pow(p, thermal) >= 1e-8) {
            thermal++;
        }
        dim = std::max(dim, thermal);
    }
    double shift = std::sqrt(2 * mu - 1) * u_max + 6;
    dim = std::max(dim, static_cast<int>(std::ceil(shift * shift)));
    return dim;
}

FockOperator glauber_mixture(double mu, FockTruncation trunc, const QuadratureSpec &spec, double tolerance) {
    require_mu(mu, "glauber_mixture");
    require_dim(trunc, "glauber_mixture");
    int n = trunc.dim;
    if (mu == 1.0) {
        return number_basis_state(0, trunc);
    }
    double p = (1 - mu) / mu;
    double s2 = p / (2 * (1 - p));
    double tail = std::exp(-spec.radius_sd * spec.radius_sd / 2);
    if (tail > tolerance) {
        std::ostringstream msg;
        msg << "glauber_mixture: Gaussian mass " << tail << " outside radius " << spec.radius_sd
            << " sd exceeds tolerance " << tolerance;
        throw AccuracyError(msg.str());
    }
    PolarGrid grid(0, 0, spec.radius_sd * std::sqrt(s2), spec.radial, spec.angular);
    double norm = 1 / (2 * std::numbers::pi * s2);
    ComplexMatrix cols(n, grid.size());
    for (std::size_t g = 0; g < grid.size(); g++) {
        double w = grid.weight[g] * norm * std::exp(-grid.r[g] * grid.r[g] / (2 * s2));
        cols.col(g) = std::sqrt(w) * coherent_coefficients({grid.x[g], grid.y[g]}, n);
    }
    FockOperator op{{n, tail}, cols * cols.adjoint()};
    op.matrix = (op.matrix + op.matrix.adjoint()) * 0.5;
    return op;
}

FockOperator heterodyne_density(LocalParam u_hat, double mu, FockTruncation trunc, double tolerance) {
    require_mu(mu, "heterodyne_density");
    FockOperator op = coherent_state(limit_displacement(u_hat, mu), trunc, tolerance);
    op.matrix *= (2 * mu - 1) / std::numbers::pi;
    return op;
}

double heterodyne_outcome_pdf(const FockOperator &phi, LocalParam u_hat, double mu) {
    require_mu(mu, "heterodyne_outcome_pdf");
    ComplexVector c = coherent_coefficients(limit_displacement(u_hat, mu), phi.trunc.dim);
    return (2 * mu - 1) / std::numbers::pi * c.dot(phi.matrix * c).real();
}

double heterodyne_sd(double mu) {
    require_mu(mu, "heterodyne_sd");
    return std::sqrt(mu / 2) / (2 * mu - 1);
}

}  // namespace qlan
