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

#ifndef QLAN_MEASUREMENTS_HPP
#define QLAN_MEASUREMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qlan/oscillator.hpp"
#include "qlan/qubit_model.hpp"
#include "qlan/quadrature.hpp"

namespace qlan {

struct BinaryTestResult {
    double risk = 0.5;
    /// Rank of the positive part of rho+ - rho-. For ensembles, summed over blocks with the
    /// multiplicity spaces left out.
    int optimal_projector_rank = 0;
    int n = 0;
    LocalParam u;
    double mu = 0;
};

/// Minimal average error for discriminating two equally likely states.
BinaryTestResult helstrom_risk(const HermitianMatrix &rho_plus, const HermitianMatrix &rho_minus);

/// Blockwise version; both ensembles must have the same spins and weights.
BinaryTestResult helstrom_risk(const EnsembleState &rho_plus, const EnsembleState &rho_minus);

/// 1/2 (1 - sqrt(1 - e^{-4|u|^2})), the risk for the coherent states at u and -u.
double discrimination_limit(LocalParam u);

/// Helstrom risk between the n-qubit states at u and -u.
BinaryTestResult finite_n_discrimination(const ModelParams &params, LocalParam u, unsigned workers = 1);

/// 1/2 - erf(|u|)/2, the risk of guessing the sign from one quadrature of the coherent state.
double position_measurement_risk(LocalParam u);

struct RiskSpec {
    enum class Method { quadrature, monte_carlo };
    Method method = Method::quadrature;
    QuadratureSpec quadrature{96, 128, 6};
    std::uint64_t seed = 0;
    std::uint64_t samples = 1000000;
    /// Fock dimension for the quadrature path; 0 selects truncation_dimension.
    int fock_dim = 0;
    /// Maximum accepted error_bound / value; 0 disables the check.
    double max_relative_error = 0.01;
    unsigned workers = 1;
};

struct RiskEstimate {
    double value = 0;
    double error_bound = 0;
    /// Integrated outcome probability on the quadrature grid (1 for Monte Carlo).
    double mass = 1;
    std::string method;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
};

const char *method_name(RiskSpec::Method method);

/// E ||u_hat - u||^2 for heterodyne outcomes on the limit state at u.
///
/// The quadrature path integrates Tr(phi^u h(u_hat)) from the truncated Fock operators; the
/// Monte Carlo path samples a coherent-state center from the Gaussian mixture of the thermal
/// state and then the vacuum-noise outcome of measuring it.
RiskEstimate heterodyne_estimation_risk(double mu, const RiskSpec &spec, LocalParam u = {});

/// Radius pi sqrt(n) / 2 of the disk of local parameters that maps one to one onto the sphere.
double covariant_disk_radius(int n);

/// Area factor of the map from the local parameter plane onto the unit sphere,
/// (2 / (sqrt(n) |u|)) sin(2|u| / sqrt(n)), with limit 4/n at the origin.
double sphere_jacobian(int n, double radius);

/// ((2j+1)/(4 pi)) <j, u_hat/sqrt(n)| rho_j |j, u_hat/sqrt(n)> sphere_jacobian.
double covariant_block_density(HalfInteger j, int n, const HermitianMatrix &rho_j, LocalParam u_hat);

/// Tr(V_j rho_j V_j^dagger h(u_hat)) plus the folded contributions of plane points that map
/// to the same sphere point, kept while their bound exceeds 1e-10.
///
/// When `dropped` is non-null it receives the bound on the folded terms left out.
double heterodyne_pullback_density(HalfInteger j, const HermitianMatrix &rho_j, double mu, LocalParam u_hat, int n,
                                   double *dropped = nullptr);

struct TvOptions {
    QuadratureSpec quadrature{100, 128, 6};
    /// Spectral components of the block states below this fraction of the largest are dropped
    /// and their mass added to the error bound.
    double spectral_floor = 1e-14;
    unsigned workers = 1;
};

struct TvResult {
    double value = 0;
    double error_bound = 0;
    /// sum_j p_j (|1 - covariant mass_j| + |1 - heterodyne mass_j|) on the grid.
    double out_of_grid = 0;
    double concentration_deficit = 0;
    double wrap_bound = 0;
    double spectral_tail = 0;
    double covariant_mass = 0;
    double heterodyne_mass = 0;
    double grid_radius = 0;
    int blocks = 0;
};

/// Outcome densities of both measurements, mixed over the concentration set, on a polar grid.
struct OutcomeDensityField {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> cell_weight;
    std::vector<double> covariant;
    std::vector<double> heterodyne;
    std::vector<HalfInteger> spins;
    std::vector<double> block_weights;
    double grid_radius = 0;
};

/// Total variation distance sum_j p_j int |m_j - h_j| over the concentration set.
TvResult measurement_tv_distance(const ModelParams &params, LocalParam u, const TvOptions &options = {});

OutcomeDensityField outcome_density_field(const ModelParams &params, LocalParam u, const TvOptions &options = {});

}  // namespace qlan

#endif
