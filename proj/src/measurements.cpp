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

#include "qlan/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qlan/errors.hpp"
#include "qlan/parallel.hpp"

namespace qlan {

namespace {

constexpr double kPi = std::numbers::pi;

void require_unit_trace(const HermitianMatrix &rho, const char *what) {
    double t = rho.trace();
    if (std::abs(t - 1) > 1e-6) {
        std::ostringstream msg;
        msg << what << ": expected unit trace, got " << t;
        throw ValidationError(msg.str());
    }
}

int positive_rank(const RealVector &ev) {
    double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    int rank = 0;
    for (Eigen::Index k = 0; k < ev.size(); k++) {
        if (ev[k] > 1e-12 * scale) {
            rank++;
        }
    }
    return rank;
}

}  // namespace

BinaryTestResult helstrom_risk(const HermitianMatrix &rho_plus, const HermitianMatrix &rho_minus) {
    if (rho_plus.dim() != rho_minus.dim()) {
        throw ValidationError("helstrom_risk: dimension mismatch");
    }
    require_unit_trace(rho_plus, "helstrom_risk");
    require_unit_trace(rho_minus, "helstrom_risk");
    require_psd(rho_plus, "helstrom_risk");
    require_psd(rho_minus, "helstrom_risk");
    RealVector ev = hermitian_eigenvalues(HermitianMatrix::trusted(rho_plus.matrix() - rho_minus.matrix()));
    BinaryTestResult out;
    out.risk = std::clamp(0.5 * (1 - 0.5 * ev.cwiseAbs().sum()), 0.0, 0.5);
    out.optimal_projector_rank = positive_rank(ev);
    return out;
}

BinaryTestResult helstrom_risk(const EnsembleState &rho_plus, const EnsembleState &rho_minus) {
    if (rho_plus.params.n != rho_minus.params.n || rho_plus.blocks.size() != rho_minus.blocks.size()) {
        throw ValidationError("helstrom_risk: ensembles have different block structures");
    }
    double norm = 0;
    int rank = 0;
    for (std::size_t i = 0; i < rho_plus.blocks.size(); i++) {
        const BlockState &a = rho_plus.blocks[i];
        const BlockState &b = rho_minus.blocks[i];
        if (a.j != b.j || std::abs(a.weight - b.weight) > 1e-12) {
            std::ostringstream msg;
            msg << "helstrom_risk: block " << i << " differs (spins " << a.j.str() << " and " << b.j.str()
                << ", weights " << a.weight << " and " << b.weight << ")";
            throw ValidationError(msg.str());
        }
        if (a.weight == 0) {
            continue;
        }
        RealVector ev = hermitian_eigenvalues(HermitianMatrix::trusted(a.matrix.matrix() - b.matrix.matrix()));
        norm += a.weight * ev.cwiseAbs().sum();
        rank += positive_rank(ev);
    }
    BinaryTestResult out;
    out.risk = std::clamp(0.5 * (1 - 0.5 * norm), 0.0, 0.5);
    out.optimal_projector_rank = rank;
    out.n = rho_plus.params.n;
    out.mu = rho_plus.params.mu;
    if (rho_plus.u) {
        out.u = *rho_plus.u;
    }
    return out;
}

double discrimination_limit(LocalParam u) {
    double a2 = u.x * u.x + u.y * u.y;
    return 0.5 * (1 - std::sqrt(-std::expm1(-4 * a2)));
}

BinaryTestResult finite_n_discrimination(const ModelParams &params, LocalParam u, unsigned workers) {
    EnsembleOptions opts;
    opts.workers = workers;
    EnsembleState plus = ensemble(params, u, opts);
    EnsembleState minus = ensemble(params, -u, opts);
    return helstrom_risk(plus, minus);
}

double position_measurement_risk(LocalParam u) {
    return 0.5 - 0.5 * std::erf(u.norm());
}

const char *method_name(RiskSpec::Method method) {
    return method == RiskSpec::Method::quadrature ? "quadrature" : "monte_carlo";
}

namespace {

// phi = Z Z^dagger with the columns of Z the scaled eigenvectors above a relative floor.
ComplexMatrix psd_factor(const ComplexMatrix &phi, double relative_floor) {
    EigenSystem es = hermitian_eig(HermitianMatrix::trusted(phi));
    Eigen::Index n = es.eigenvalues.size();
    double top = es.eigenvalues[n - 1];
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = n - 1; k >= 0; k--) {
        if (es.eigenvalues[k] > relative_floor * top) {
            keep.push_back(k);
        }
    }
    ComplexMatrix z(n, keep.size());
    for (std::size_t c = 0; c < keep.size(); c++) {
        z.col(c) = es.eigenvectors.col(keep[c]) * std::sqrt(es.eigenvalues[keep[c]]);
    }
    return z;
}

// Coherent coefficients by recurrence; falls back to log space for very large amplitudes.
void fill_coherent(Complex z, Eigen::Ref<ComplexVector> out) {
    Eigen::Index count = out.size();
    double r2 = std::norm(z);
    if (r2 > 1000) {
        out = coherent_coefficients(z, static_cast<int>(count));
        return;
    }
    Complex c = std::exp(-r2 / 2);
    for (Eigen::Index k = 0; k < count; k++) {
        out[k] = c;
        c *= z / std::sqrt(static_cast<double>(k + 1));
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RiskEstimate risk_by_quadrature(double mu, const RiskSpec &spec, LocalParam u) {
    double sd = heterodyne_sd(mu);
    double radius = spec.quadrature.radius_sd * sd;
    int dim = spec.fock_dim > 0 ? spec.fock_dim : truncation_dimension(mu, u.norm() + radius);
    FockOperator phi = displaced_thermal(u, mu, {dim, 0});
    ComplexMatrix z = psd_factor(phi.matrix, 1e-18);
    PolarGrid grid(u.x, u.y, radius, spec.quadrature.radial, spec.quadrature.angular);

    std::vector<double> mass(grid.size());
    std::vector<double> moment(grid.size());
    constexpr std::size_t kChunk = 2048;
    std::size_t chunks = (grid.size() + kChunk - 1) / kChunk;
    double scale = (2 * mu - 1) / kPi;
    parallel_for(chunks, spec.workers, [&](std::size_t c) {
        std::size_t lo = c * kChunk;
        std::size_t hi = std::min(grid.size(), lo + kChunk);
        ComplexMatrix coh(dim, hi - lo);
        for (std::size_t g = lo; g < hi; g++) {
            fill_coherent(limit_displacement({grid.x[g], grid.y[g]}, mu), coh.col(g - lo));
        }
        ComplexMatrix proj = z.adjoint() * coh;
        for (std::size_t g = lo; g < hi; g++) {
            double q = scale * proj.col(g - lo).squaredNorm();
            mass[g] = grid.weight[g] * q;
            moment[g] = mass[g] * grid.r[g] * grid.r[g];
        }
    });
    RiskEstimate est;
    est.method = method_name(spec.method);
    est.mass = pairwise_sum(mass);
    est.value = pairwise_sum(moment) / est.mass;
    double missing = std::abs(1 - est.mass);
    est.error_bound = missing * (radius * radius + 2 * sd * sd + est.value);
    if (missing > 1e-3) {
        std::ostringstream msg;
        msg << "heterodyne_estimation_risk: quadrature captured mass " << est.mass << " (Fock dimension " << dim
            << ", radius " << radius << ")";
        throw AccuracyError(msg.str());
    }
    return est;
}

RiskEstimate risk_by_monte_carlo(double mu, const RiskSpec &spec, LocalParam u) {
    if (spec.samples < 2) {
        throw DomainError("heterodyne_estimation_risk: Monte Carlo needs at least 2 samples");
    }
    double p = (1 - mu) / mu;
    double center_sd = std::sqrt(p / (2 * (1 - p)));
    double noise_sd = std::sqrt(0.5);
    Complex mean = limit_displacement(u, mu);
    double inv = 1 / std::sqrt(2 * mu - 1);
    constexpr std::uint64_t kChunk = 1 << 16;
    std::uint64_t chunks = (spec.samples + kChunk - 1) / kChunk;
    std::vector<double> sums(chunks);
    std::vector<double> squares(chunks);
    parallel_for(chunks, spec.workers, [&](std::size_t c) {
        std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(c)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uint64_t lo = c * kChunk;
        std::uint64_t hi = std::min<std::uint64_t>(spec.samples, lo + kChunk);
        double s = 0;
        double s2 = 0;
        for (std::uint64_t i = lo; i < hi; i++) {
            // Coherent-state center drawn from the Gaussian mixture, then the heterodyne noise.
            double a = gauss(rng) * center_sd + gauss(rng) * noise_sd;
            double b = gauss(rng) * center_sd + gauss(rng) * noise_sd;
            Complex alpha = (mean + Complex(a, b)) * inv;
            double ex = alpha.imag() - u.x;
            double ey = -alpha.real() - u.y;
            double e2 = ex * ex + ey * ey;
            s += e2;
            s2 += e2 * e2;
        }
        sums[c] = s;
        squares[c] = s2;
    });
    double count = static_cast<double>(spec.samples);
    double mean_e2 = pairwise_sum(sums) / count;
    double var = std::max(0.0, pairwise_sum(squares) / count - mean_e2 * mean_e2) * count / (count - 1);
    RiskEstimate est;
    est.method = method_name(spec.method);
    est.value = mean_e2;
    est.error_bound = 3 * std::sqrt(var / count);
    est.seed = spec.seed;
    est.samples = spec.samples;
    return est;
}

}  // namespace

RiskEstimate heterodyne_estimation_risk(double mu, const RiskSpec &spec, LocalParam u) {
    require_mu(mu, "heterodyne_estimation_risk");
    if (!u.finite()) {
        throw DomainError("heterodyne_estimation_risk: local parameter must be finite");
    }
    RiskEstimate est =
        spec.method == RiskSpec::Method::quadrature ? risk_by_quadrature(mu, spec, u) : risk_by_monte_carlo(mu, spec, u);
    if (spec.max_relative_error > 0 && est.error_bound > spec.max_relative_error * est.value) {
        std::ostringstream msg;
        msg << "heterodyne_estimation_risk: error bound " << est.error_bound << " exceeds the requested relative error "
            << spec.max_relative_error << " of " << est.value;
        throw AccuracyError(msg.str());
    }
    return est;
}

double covariant_disk_radius(int n) {
    return kPi * std::sqrt(static_cast<double>(n)) / 2;
}

double sphere_jacobian(int n, double radius) {
    double root_n = std::sqrt(static_cast<double>(n));
    if (radius == 0) {
        return 4.0 / n;
    }
    return 2 / (root_n * radius) * std::sin(2 * radius / root_n);
}

double covariant_block_density(HalfInteger j, int n, const HermitianMatrix &rho_j, LocalParam u_hat) {
    if (n < 1) {
        throw DomainError("covariant_block_density: n must be positive");
    }
    if (rho_j.dim() != j.dim()) {
        throw ValidationError("covariant_block_density: block dimension does not match the spin");
    }
    double r = u_hat.norm();
    if (!(r < covariant_disk_radius(n))) {
        std::ostringstream msg;
        msg << "covariant_block_density: |u_hat| = " << r << " outside the disk of radius " << covariant_disk_radius(n);
        throw DomainError(msg.str());
    }
    ComplexVector v = spin_coherent_coords(j, u_hat / std::sqrt(static_cast<double>(n)));
    double q = std::max(0.0, v.dot(rho_j.matrix() * v).real());
    return j.dim() / (4 * kPi) * q * sphere_jacobian(n, r);
}

double heterodyne_pullback_density(HalfInteger j, const HermitianMatrix &rho_j, double mu, LocalParam u_hat, int n,
                                   double *dropped) {
    require_mu(mu, "heterodyne_pullback_density");
    if (rho_j.dim() != j.dim()) {
        throw ValidationError("heterodyne_pullback_density: block dimension does not match the spin");
    }
    if (n < 1) {
        throw DomainError("heterodyne_pullback_density: n must be positive");
    }
    int d = j.dim();
    double scale = (2 * mu - 1) / kPi;
    auto term = [&](LocalParam x) {
        ComplexVector c = coherent_coefficients(limit_displacement(x, mu), d);
        return scale * std::max(0.0, c.dot(rho_j.matrix() * c).real());
    };
    double value = term(u_hat);
    double left_out = 0;
    double r = u_hat.norm();
    if (r > 0) {
        // Plane points along the same line whose sphere images coincide with that of u_hat.
        double period = kPi * std::sqrt(static_cast<double>(n));
        double tr = std::max(rho_j.trace(), 0.0);
        double ux = u_hat.x / r;
        double uy = u_hat.y / r;
        for (int k = 1; k <= 64; k++) {
            bool significant = false;
            for (double signed_radius : {r + k * period, -(k * period - r)}) {
                LocalParam x{ux * signed_radius, uy * signed_radius};
                double area = std::abs(signed_radius) / r;
                ComplexVector c = coherent_coefficients(limit_displacement(x, mu), d);
                double bound = scale * area * tr * c.squaredNorm();
                if (bound > 1e-10) {
                    value += area * scale * std::max(0.0, c.dot(rho_j.matrix() * c).real());
                    significant = true;
                } else {
                    left_out += bound;
                }
            }
            if (!significant && k * period > r + std::sqrt(static_cast<double>(d))) {
                break;
            }
        }
    }
    if (dropped) {
        *dropped = left_out;
    }
    return value;
}

namespace {

struct BlockEval {
    double tv = 0;
    double covariant_mass = 0;
    double heterodyne_mass = 0;
    double spectral_tail = 0;
    std::vector<double> covariant;
    std::vector<double> heterodyne;
};

struct DensitySetup {
    std::vector<HalfInteger> spins;
    std::vector<double> weights;
    double deficit = 0;
    double wrap_bound = 0;
    double radius = 0;
};

DensitySetup density_setup(const ModelParams &params, LocalParam u, const TvOptions &options) {
    params.validate();
    if (!u.finite()) {
        throw DomainError("measurement_tv_distance: local parameter must be finite");
    }
    DensitySetup s;
    s.spins = concentration_set(params);
    double kept = 0;
    for (HalfInteger j : s.spins) {
        s.weights.push_back(block_weight(params, j));
        kept += s.weights.back();
    }
    s.deficit = std::max(0.0, 1 - kept);
    double disk = covariant_disk_radius(params.n);
    s.radius = std::min(u.norm() + options.quadrature.radius_sd * heterodyne_sd(params.mu), disk * (1 - 1e-9));
    double gap = std::max(0.0, 2 * disk - s.radius - u.norm());
    double c = 2 * params.mu - 1;
    s.wrap_bound = std::exp(-c * c * gap * gap / params.mu);
    if (s.wrap_bound >= 1e-10) {
        std::ostringstream msg;
        msg << "measurement_tv_distance: folded heterodyne mass bound " << s.wrap_bound
            << " is not negligible at n = " << params.n << "; use larger n or a smaller grid";
        throw AccuracyError(msg.str());
    }
    return s;
}

std::vector<BlockEval> evaluate_blocks(const ModelParams &params, LocalParam u, const DensitySetup &setup,
                                       const PolarGrid &grid, const TvOptions &options, bool keep_fields) {
    std::size_t nb = setup.spins.size();
    std::vector<ComplexMatrix> factors(nb);
    std::vector<double> tails(nb);
    std::vector<int> rows(nb);
    parallel_for(nb, options.workers, [&](std::size_t b) {
        BlockFactor f = block_factor(params, setup.spins[b], u, options.spectral_floor);
        tails[b] = std::max(0.0, 1 - f.values.sum());
        ComplexMatrix z = f.vectors * f.values.cwiseSqrt().asDiagonal();
        int last = 0;
        for (Eigen::Index r = 0; r < z.rows(); r++) {
            if (z.row(r).cwiseAbs().maxCoeff() > 1e-17) {
                last = static_cast<int>(r);
            }
        }
        rows[b] = last + 1;
        factors[b] = z.topRows(last + 1);
    });
    int max_rows = *std::max_element(rows.begin(), rows.end());
    std::size_t g_count = grid.size();
    double c = 2 * params.mu - 1;
    ComplexMatrix coh(max_rows, g_count);
    for (std::size_t g = 0; g < g_count; g++) {
        fill_coherent(limit_displacement({grid.x[g], grid.y[g]}, params.mu), coh.col(g));
    }
    std::vector<double> jac(g_count);
    for (std::size_t g = 0; g < g_count; g++) {
        jac[g] = sphere_jacobian(params.n, grid.r[g]);
    }
    double root_n = std::sqrt(static_cast<double>(params.n));

    std::vector<BlockEval> out(nb);
    parallel_for(nb, options.workers, [&](std::size_t b) {
        HalfInteger j = setup.spins[b];
        const ComplexMatrix &z = factors[b];
        int l = rows[b];
        ComplexMatrix spin(l, g_count);
        for (std::size_t g = 0; g < g_count; g++) {
            spin.col(g) = spin_coherent_prefix(j, LocalParam{grid.x[g], grid.y[g]} / root_n, l);
        }
        ComplexMatrix het = z.adjoint() * coh.topRows(l);
        ComplexMatrix cov = z.adjoint() * spin;
        double cov_scale = j.dim() / (4 * kPi);
        double het_scale = c / kPi;
        std::vector<double> diff(g_count), mc(g_count), mh(g_count);
        BlockEval &e = out[b];
        if (keep_fields) {
            e.covariant.resize(g_count);
            e.heterodyne.resize(g_count);
        }
        for (std::size_t g = 0; g < g_count; g++) {
            double m = cov_scale * cov.col(g).squaredNorm() * jac[g];
            double h = het_scale * het.col(g).squaredNorm();
            diff[g] = grid.weight[g] * std::abs(m - h);
            mc[g] = grid.weight[g] * m;
            mh[g] = grid.weight[g] * h;
            if (keep_fields) {
                e.covariant[g] = m;
                e.heterodyne[g] = h;
            }
        }
        e.tv = pairwise_sum(diff);
        e.covariant_mass = pairwise_sum(mc);
        e.heterodyne_mass = pairwise_sum(mh);
        e.spectral_tail = tails[b];
    });
    return out;
}

}  // namespace

TvResult measurement_tv_distance(const ModelParams &params, LocalParam u, const TvOptions &options) {
    DensitySetup setup = density_setup(params, u, options);
    PolarGrid grid(0, 0, setup.radius, options.quadrature.radial, options.quadrature.angular);
    std::vector<BlockEval> evals = evaluate_blocks(params, u, setup, grid, options, false);
    TvResult res;
    res.concentration_deficit = setup.deficit;
    res.wrap_bound = setup.wrap_bound;
    res.grid_radius = setup.radius;
    res.blocks = static_cast<int>(evals.size());
    for (std::size_t b = 0; b < evals.size(); b++) {
        double w = setup.weights[b];
        const BlockEval &e = evals[b];
        res.value += w * e.tv;
        res.covariant_mass += w * e.covariant_mass;
        res.heterodyne_mass += w * e.heterodyne_mass;
        res.out_of_grid += w * (std::abs(1 - e.covariant_mass) + std::abs(1 - e.heterodyne_mass));
        res.spectral_tail += w * e.spectral_tail;
    }
    res.error_bound = res.out_of_grid + 2 * res.concentration_deficit + res.wrap_bound + res.spectral_tail;
    return res;
}

OutcomeDensityField outcome_density_field(const ModelParams &params, LocalParam u, const TvOptions &options) {
    DensitySetup setup = density_setup(params, u, options);
    PolarGrid grid(0, 0, setup.radius, options.quadrature.radial, options.quadrature.angular);
    std::vector<BlockEval> evals = evaluate_blocks(params, u, setup, grid, options, true);
    OutcomeDensityField f;
    f.x = grid.x;
    f.y = grid.y;
    f.cell_weight = grid.weight;
    f.covariant.assign(grid.size(), 0);
    f.heterodyne.assign(grid.size(), 0);
    f.spins = setup.spins;
    f.block_weights = setup.weights;
    f.grid_radius = setup.radius;
    for (std::size_t b = 0; b < evals.size(); b++) {
        for (std::size_t g = 0; g < grid.size(); g++) {
            f.covariant[g] += setup.weights[b] * evals[b].covariant[g];
            f.heterodyne[g] += setup.weights[b] * evals[b].heterodyne[g];
        }
    }
    return f;
}

}  // namespace qlan
