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

#include "qlan/qubit_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qlan/errors.hpp"
#include "qlan/parallel.hpp"

namespace qlan {

void ModelParams::validate() const {
    std::ostringstream msg;
    if (n < 1) {
        msg << "n must be a positive integer, got " << n;
    } else if (!(mu > 0.5 && mu <= 1.0)) {
        msg << "mu must lie in (1/2, 1], got " << mu;
    } else if (!(epsilon > 0 && epsilon < 0.5)) {
        msg << "epsilon must lie in (0, 1/2), got " << epsilon;
    } else {
        return;
    }
    throw DomainError(msg.str());
}

double EnsembleState::total_weight() const {
    double s = 0;
    for (const auto &b : blocks) {
        s += b.weight;
    }
    return s;
}

std::vector<HalfInteger> spins_for(int n) {
    if (n < 1) {
        throw DomainError("spins_for: n must be positive");
    }
    std::vector<HalfInteger> out;
    for (int t = n % 2; t <= n; t += 2) {
        out.push_back(HalfInteger::from_twice(t));
    }
    return out;
}

void require_valid_spin(int n, HalfInteger j) {
    if (n < 1 || j.twice() > n || (n - j.twice()) % 2 != 0) {
        std::ostringstream msg;
        msg << "spin j = " << j.str() << " is not compatible with n = " << n
            << " (need j <= n/2 and 2j with the parity of n)";
        throw DomainError(msg.str());
    }
}

std::uint64_t multiplicity(int n, HalfInteger j) {
    require_valid_spin(n, j);
    if (n > 60) {
        throw DomainError("multiplicity: exact integer path supports n <= 60; use log_multiplicity");
    }
    std::vector<std::uint64_t> row(n + 1, 0);
    row[0] = 1;
    for (int m = 1; m <= n; m++) {
        for (int k = m; k > 0; k--) {
            row[k] += row[k - 1];
        }
    }
    int a = (n - j.twice()) / 2;
    return row[a] - (a >= 1 ? row[a - 1] : 0);
}

double log_multiplicity(int n, HalfInteger j) {
    require_valid_spin(n, j);
    // C(n,a) - C(n,a-1) = C(n,a) (2j+1) / (n/2 + j + 1), a = n/2 - j.
    int a = (n - j.twice()) / 2;
    double upper = (n + j.twice()) / 2.0 + 1;
    return log_binomial(n, a) + std::log(j.twice() + 1.0) - std::log(upper);
}

double log_block_weight(const ModelParams &params, HalfInteger j) {
    params.validate();
    require_valid_spin(params.n, j);
    if (params.pure()) {
        return j.twice() == params.n ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    double mu = params.mu;
    double a = (params.n - j.twice()) / 2.0;
    double b = (params.n + j.twice()) / 2.0 + 1;
    double tail = std::log1p(-std::exp((j.twice() + 1) * std::log(params.p())));
    return log_multiplicity(params.n, j) - std::log(2 * mu - 1) + a * std::log1p(-mu) + b * std::log(mu) + tail;
}

double block_weight(const ModelParams &params, HalfInteger j) {
    return std::exp(log_block_weight(params, j));
}

double binomial_factor(const ModelParams &params, HalfInteger j) {
    params.validate();
    require_valid_spin(params.n, j);
    if (params.pure()) {
        // The binomial pmf vanishes off the top block; use the cancelled ratio.
        return (j.twice() + 1.0) / ((params.n + j.twice()) / 2.0 + 1);
    }
    int k = (params.n + j.twice()) / 2;
    double log_b = log_binomial(params.n, k) + k * std::log(params.mu) + (params.n - k) * std::log1p(-params.mu);
    return std::exp(log_block_weight(params, j) - log_b);
}

std::vector<HalfInteger> concentration_set(const ModelParams &params) {
    params.validate();
    double half = std::pow(static_cast<double>(params.n), 0.5 + params.epsilon);
    double lo = 2 * (params.j_center() - half);
    double hi = 2 * (params.j_center() + half);
    std::vector<HalfInteger> out;
    for (HalfInteger j : spins_for(params.n)) {
        if (j.twice() >= lo && j.twice() <= hi) {
            out.push_back(j);
        }
    }
    return out;
}

RealVector block_spectrum(const ModelParams &params, HalfInteger j) {
    params.validate();
    require_valid_spin(params.n, j);
    int d = j.dim();
    RealVector out = RealVector::Zero(d);
    if (params.pure()) {
        out[0] = 1;
        return out;
    }
    double p = params.p();
    double log_p = std::log(p);
    double c = (1 - p) / -std::expm1(d * log_p);
    for (int i = 0; i < d; i++) {
        out[i] = c * std::exp(i * log_p);
    }
    return out;
}

HermitianMatrix block_state_zero(const ModelParams &params, HalfInteger j) {
    RealVector s = block_spectrum(params, j);
    return HermitianMatrix::trusted(s.cast<Complex>().asDiagonal().toDenseMatrix());
}

BlockFactor block_factor(const ModelParams &params, HalfInteger j, LocalParam u, double relative_floor) {
    RealVector s = block_spectrum(params, j);
    int count = 0;
    while (count < s.size() && s[count] > 0 && s[count] >= relative_floor * s[0]) {
        count++;
    }
    BlockFactor f;
    f.values = s.head(count);
    f.vectors = rotation_columns(j, u / std::sqrt(static_cast<double>(params.n)), count);
    return f;
}

HermitianMatrix block_state(const ModelParams &params, HalfInteger j, LocalParam u) {
    BlockFactor f = block_factor(params, j, u, 1e-18);
    ComplexMatrix scaled = f.vectors * f.values.cwiseSqrt().asDiagonal();
    return HermitianMatrix::trusted(scaled * scaled.adjoint());
}

EnsembleState ensemble(const ModelParams &params, LocalParam u, const EnsembleOptions &options) {
    params.validate();
    if (!u.finite()) {
        throw DomainError("ensemble: local parameter must be finite");
    }
    std::vector<HalfInteger> spins = options.concentration_only ? concentration_set(params) : spins_for(params.n);
    EnsembleState out;
    out.params = params;
    out.u = u;
    out.blocks.resize(spins.size());
    parallel_for(spins.size(), options.workers, [&](std::size_t i) {
        BlockState &b = out.blocks[i];
        b.j = spins[i];
        b.weight = block_weight(params, spins[i]);
        b.matrix = block_state(params, spins[i], u);
    });
    return out;
}

}  // namespace qlan
