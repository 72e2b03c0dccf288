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

#include "qlan/channels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qlan/errors.hpp"
#include "qlan/parallel.hpp"

namespace qlan {

void EmbeddingMap::validate() const {
    if (target.dim < j.dim()) {
        std::ostringstream msg;
        msg << "embedding of spin " << j.str() << " needs at least " << j.dim() << " Fock levels, got "
            << target.dim;
        throw TruncationError(msg.str());
    }
}

FockOperator embed_block(const HermitianMatrix &rho_j, const EmbeddingMap &emb) {
    emb.validate();
    int d = emb.j.dim();
    if (rho_j.dim() != d) {
        throw ValidationError("embed_block: block has dimension " + std::to_string(rho_j.dim()) + ", spin " +
                              emb.j.str() + " needs " + std::to_string(d));
    }
    int n = emb.target.dim;
    FockOperator op{{n, 0}, ComplexMatrix::Zero(n, n)};
    op.matrix.topLeftCorner(d, d) = rho_j.matrix();
    return op;
}

ForwardImage forward_channel(const EnsembleState &ens, FockTruncation trunc, const ForwardOptions &options) {
    std::vector<HalfInteger> keep;
    if (options.concentration_only) {
        keep = concentration_set(ens.params);
    }
    int n = trunc.dim;
    ForwardImage out{{{n, 0}, ComplexMatrix::Zero(n, n)}, 0};
    double present = 0;
    for (const BlockState &b : ens.blocks) {
        present += b.weight;
        if (options.concentration_only && !std::binary_search(keep.begin(), keep.end(), b.j)) {
            out.excluded_weight += b.weight;
            continue;
        }
        if (b.weight == 0) {
            continue;
        }
        EmbeddingMap{b.j, trunc}.validate();
        int d = b.j.dim();
        out.state.matrix.topLeftCorner(d, d) += b.weight * b.matrix.matrix();
    }
    if (ens.blocks.size() < spins_for(ens.params.n).size()) {
        out.excluded_weight += std::max(0.0, 1 - present);
    }
    return out;
}

HermitianMatrix inverse_channel_block(const FockOperator &phi, const EmbeddingMap &emb) {
    emb.validate();
    if (phi.matrix.rows() != emb.target.dim || phi.matrix.cols() != emb.target.dim) {
        throw ValidationError("inverse_channel_block: operator dimension does not match the embedding target");
    }
    double total = phi.matrix.diagonal().real().sum();
    if (total > 1 + 1e-10) {
        std::ostringstream msg;
        msg << "inverse_channel_block: input trace " << total << " exceeds 1";
        throw ValidationError(msg.str());
    }
    int d = emb.j.dim();
    ComplexMatrix block = phi.matrix.topLeftCorner(d, d);
    double inside = block.diagonal().real().sum();
    block(0, 0) += std::max(0.0, 1 - inside);
    return HermitianMatrix::trusted(block);
}

EnsembleState inverse_channel(const FockOperator &phi, const ModelParams &params) {
    params.validate();
    EnsembleState out;
    out.params = params;
    for (HalfInteger j : spins_for(params.n)) {
        BlockState b;
        b.j = j;
        b.weight = block_weight(params, j);
        b.matrix = inverse_channel_block(phi, {j, phi.trunc});
        out.blocks.push_back(std::move(b));
    }
    return out;
}

// sum_{k >= from} |<k|z>|^2, summed term by term so small tails keep full relative accuracy.
static double coherent_tail_mass(Complex z, int from) {
    double r2 = std::norm(z);
    if (r2 == 0) {
        return from == 0 ? 1.0 : 0.0;
    }
    double log_r2 = std::log(r2);
    double sum = 0;
    for (int k = from;; k++) {
        double term = std::exp(-r2 + k * log_r2 - std::lgamma(k + 1.0));
        sum += term;
        if (k > r2 && term < 1e-18 * sum) {
            break;
        }
        if (k > r2 && term == 0) {
            break;
        }
    }
    return sum;
}

double coherent_vector_distance(HalfInteger j, LocalParam u, int n, FockTruncation trunc, std::optional<double> mu) {
    if (n < 1) {
        throw DomainError("coherent_vector_distance: n must be positive");
    }
    EmbeddingMap{j, trunc}.validate();
    double scale;
    if (mu) {
        require_mu(*mu, "coherent_vector_distance");
        scale = 2 * *mu - 1;
    } else {
        scale = j.twice() / static_cast<double>(n);
    }
    double root_n = std::sqrt(static_cast<double>(n));
    ComplexVector spin = spin_coherent_coords(j, u / root_n);
    Complex z = std::sqrt(scale) * u.alpha();
    ComplexVector coh = coherent_coefficients(z, j.dim());
    double d2 = (spin - coh).squaredNorm() + coherent_tail_mass(z, j.dim());
    return std::sqrt(d2);
}

double composition_defect(HalfInteger j, LocalParam u, LocalParam v, int n) {
    if (n < 1) {
        throw DomainError("composition_defect: n must be positive");
    }
    double root_n = std::sqrt(static_cast<double>(n));
    LocalParam us = u / root_n;
    LocalParam vs = v / root_n;
    ComplexMatrix first = spin_coherent_coords(j, vs);
    ComplexVector composed = apply_rotation(j, us, first).col(0);
    ComplexVector direct = spin_coherent_coords(j, us + vs);
    return pure_state_trace_distance(composed, direct);
}

HalfInteger nearest_center_spin(const ModelParams &params) {
    params.validate();
    int parity = params.n % 2;
    double target = 2 * params.j_center();
    int best = parity;
    double best_gap = std::abs(best - target);
    for (int t = parity; t <= params.n; t += 2) {
        double gap = std::abs(t - target);
        if (gap < best_gap) {
            best = t;
            best_gap = gap;
        }
    }
    return HalfInteger::from_twice(best);
}

static std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<double> GridAxis::values() const {
    if (steps < 1 || !std::isfinite(min) || !std::isfinite(max) || max < min) {
        throw DomainError("grid axis " + str() + " is invalid: need finite min <= max and steps >= 1");
    }
    if (steps == 1) {
        return {min};
    }
    std::vector<double> out(steps);
    for (int k = 0; k < steps; k++) {
        out[k] = min + (max - min) * k / (steps - 1);
    }
    out.back() = max;
    return out;
}

std::string GridAxis::str() const {
    return format_double(min) + ":" + format_double(max) + ":" + std::to_string(steps);
}

std::vector<LocalParam> ParamGrid::points() const {
    std::vector<LocalParam> out;
    for (double a : x.values()) {
        for (double b : y.values()) {
            out.push_back({a, b});
        }
    }
    return out;
}

std::string ParamGrid::str() const {
    return x.str() + "," + y.str();
}

std::vector<ConvergenceRecord> convergence_sweep(double mu, double epsilon, const ParamGrid &grid,
                                                 const std::vector<int> &n_list, const SweepOptions &options) {
    std::vector<LocalParam> points = grid.points();
    if (points.empty() || n_list.empty()) {
        throw DomainError("convergence_sweep: empty grid or n list");
    }
    double u_max = 0;
    for (const LocalParam &u : points) {
        u_max = std::max(u_max, u.norm());
    }
    std::vector<ConvergenceRecord> records(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); i++) {
        ModelParams params{n_list[i], mu, epsilon};
        params.validate();
        ConvergenceRecord &rec = records[i];
        rec.n = params.n;
        rec.mu = mu;
        rec.epsilon = epsilon;
        rec.grid = grid.str();
        rec.fock_dim = options.fock_dim > 0 ? options.fock_dim : truncation_dimension(mu, u_max, params.n);
        rec.points.resize(points.size());
        std::vector<HalfInteger> inside = concentration_set(params);
        for (HalfInteger j : spins_for(params.n)) {
            if (!std::binary_search(inside.begin(), inside.end(), j)) {
                rec.concentration_deficit += block_weight(params, j);
            }
        }
    }

    std::size_t per_n = points.size();
    parallel_for(n_list.size() * per_n, options.workers, [&](std::size_t task) {
        ConvergenceRecord &rec = records[task / per_n];
        PointDistances &pt = rec.points[task % per_n];
        LocalParam u = points[task % per_n];
        ModelParams params{rec.n, mu, epsilon};
        FockTruncation trunc{rec.fock_dim, 0};

        EnsembleState ens = ensemble(params, u);
        FockOperator phi = displaced_thermal(u, mu, trunc);
        ForwardImage fwd = forward_channel(ens, trunc, {options.concentration_only});
        pt.u = u;
        pt.truncation_tail = phi.trunc.tail_bound;
        pt.forward = trace_norm(HermitianMatrix::trusted(fwd.state.matrix - phi.matrix));

        std::vector<HalfInteger> inside = concentration_set(params);
        for (const BlockState &b : ens.blocks) {
            if (b.weight == 0) {
                continue;
            }
            HermitianMatrix back = inverse_channel_block(phi, {b.j, trunc});
            pt.reverse += b.weight * trace_norm(HermitianMatrix::trusted(back.matrix() - b.matrix.matrix()));
            if (options.blockwise && std::binary_search(inside.begin(), inside.end(), b.j)) {
                FockOperator emb = embed_block(b.matrix, {b.j, trunc});
                double dist = trace_norm(HermitianMatrix::trusted(emb.matrix - phi.matrix));
                pt.blockwise = std::max(pt.blockwise, dist);
            }
        }
        if (task % per_n == 0) {
            rec.excluded_weight = fwd.excluded_weight;
        }
    });

    for (ConvergenceRecord &rec : records) {
        rec.forward_sup = -1;
        rec.reverse_sup = -1;
        rec.blockwise_sup = -1;
        for (const PointDistances &pt : rec.points) {
            if (pt.forward > rec.forward_sup) {
                rec.forward_sup = pt.forward;
                rec.forward_argmax = pt.u;
            }
            if (pt.reverse > rec.reverse_sup) {
                rec.reverse_sup = pt.reverse;
                rec.reverse_argmax = pt.u;
            }
            if (pt.blockwise > rec.blockwise_sup) {
                rec.blockwise_sup = pt.blockwise;
                rec.blockwise_argmax = pt.u;
            }
            rec.truncation_bound = std::max(rec.truncation_bound, pt.truncation_tail);
        }
    }
    return records;
}

}  // namespace qlan
