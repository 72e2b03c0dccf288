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

#ifndef QLAN_OSCILLATOR_HPP
#define QLAN_OSCILLATOR_HPP

#include "qlan/irreps.hpp"
#include "qlan/numerics.hpp"
#include "qlan/quadrature.hpp"

namespace qlan {

/// Levels 0..dim-1 of the oscillator.
struct FockTruncation {
    int dim = 1;
    /// Trace (or, for unitaries, unitarity) deficit caused by the truncation.
    double tail_bound = 0;
};

struct FockOperator {
    FockTruncation trunc;
    ComplexMatrix matrix;
};

struct Displacement {
    Complex z;
};

/// |k><k|.
FockOperator number_basis_state(int k, FockTruncation trunc);

/// (1 - p) sum_k p^k |k><k|, truncated. tail_bound = p^N.
FockOperator thermal_state(double p, FockTruncation trunc);

/// e^{-|z|^2/2} z^k / sqrt(k!) for k < count.
ComplexVector coherent_coefficients(Complex z, int count);

/// 1 - sum_{k<dim} |<k|z>|^2.
double coherent_leakage(Complex z, int dim);

/// Smallest dimension with coherent_leakage below `tolerance`.
int coherent_dimension(Complex z, double tolerance);

/// Unnormalized projector onto the truncated coherent vector; tail_bound is the leakage.
FockOperator coherent_state(Complex z, FockTruncation trunc, double tolerance = 1e-10);

/// exp(z a^dagger - conj(z) a), built on a padded space and cropped.
///
/// tail_bound holds the unitarity deficit max |(D^dagger D - 1)_{kl}| over the leading
/// ceil(N/2) levels, the block unaffected by the crop.
FockOperator displacement_operator(Displacement d, FockTruncation trunc, double tolerance = 1e-8);

/// Padding used by displacement_operator: max(16, ceil(8 |z|)).
int displacement_padding(Complex z);

/// sqrt(2 mu - 1) alpha_u, the phase-space mean of the limit state for parameter u.
Complex limit_displacement(LocalParam u, double mu);

/// D(z) thermal(p) D(z)^dagger with z = limit_displacement(u, mu), p = (1 - mu) / mu.
///
/// tail_bound = 1 - trace. Throws TruncationError when it exceeds `tolerance`.
FockOperator displaced_thermal(LocalParam u, double mu, FockTruncation trunc, double tolerance = 1e-6);

/// Fock dimension large enough for thermal tails below 1e-8, displacements of parameters up
/// to `u_max`, and embedded spins up to `two_j_max` / 2.
int truncation_dimension(double mu, double u_max, int two_j_max = 0);

/// Mixture of coherent states with a centered Gaussian weight of variance
/// s^2 = p / (2 (1 - p)) per real coordinate, by polar quadrature.
///
/// Throws AccuracyError when the Gaussian mass outside the quadrature radius exceeds
/// `tolerance`.
FockOperator glauber_mixture(double mu, FockTruncation trunc, const QuadratureSpec &spec = {}, double tolerance = 1e-4);

/// (2 mu - 1)/pi |z><z| with z = limit_displacement(u_hat, mu).
FockOperator heterodyne_density(LocalParam u_hat, double mu, FockTruncation trunc, double tolerance = 1e-10);

/// Tr(phi h(u_hat)).
double heterodyne_outcome_pdf(const FockOperator &phi, LocalParam u_hat, double mu);

/// Per-axis standard deviation of the heterodyne outcome, sqrt(mu / (2 (2 mu - 1)^2)).
double heterodyne_sd(double mu);

/// Throws DomainError unless 1/2 < mu <= 1.
void require_mu(double mu, const char *what);

}  // namespace qlan

#endif
