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

#ifndef QLAN_QUBIT_MODEL_HPP
#define QLAN_QUBIT_MODEL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qlan/irreps.hpp"
#include "qlan/numerics.hpp"

namespace qlan {

/// n copies of the qubit state diag(mu, 1 - mu), rotated by u / sqrt(n).
struct ModelParams {
    int n = 1;
    double mu = 0.75;
    /// Half-width exponent of the concentration window, n^{1/2 + epsilon}.
    double epsilon = 0.1;

    /// Throws DomainError unless n >= 1, 1/2 < mu <= 1 and 0 < epsilon < 1/2.
    void validate() const;
    /// Ratio (1 - mu) / mu of the two qubit eigenvalues.
    double p() const {
        return (1 - mu) / mu;
    }
    /// n (mu - 1/2), the spin where the block weights concentrate.
    double j_center() const {
        return n * (mu - 0.5);
    }
    bool pure() const {
        return mu == 1.0;
    }
};

struct BlockState {
    HalfInteger j;
    double weight = 0;
    HermitianMatrix matrix;
};

/// Block-diagonal form of the n-qubit state: one density matrix per total spin j.
///
/// `u` is empty for states that are not members of the rotated family.
struct EnsembleState {
    ModelParams params;
    std::optional<LocalParam> u;
    std::vector<BlockState> blocks;

    double total_weight() const;
};

/// All spins compatible with n: 2j in {n mod 2, n mod 2 + 2, ..., n}.
std::vector<HalfInteger> spins_for(int n);

/// Throws DomainError unless j <= n/2 and 2j has the parity of n.
void require_valid_spin(int n, HalfInteger j);

/// Exact multiplicity of the spin-j irrep in n qubits, C(n, n/2-j) - C(n, n/2-j-1).
///
/// Requires n <= 60; use log_multiplicity beyond.
std::uint64_t multiplicity(int n, HalfInteger j);

/// log of the multiplicity, valid for any n.
double log_multiplicity(int n, HalfInteger j);

/// Probability of the spin-j block. Exactly 0 or 1 in the pure case.
double block_weight(const ModelParams &params, HalfInteger j);

/// log of block_weight; -infinity for weight 0.
double log_block_weight(const ModelParams &params, HalfInteger j);

/// block_weight(j) / B(n/2 + j), with B the Binomial(n, mu) pmf.
double binomial_factor(const ModelParams &params, HalfInteger j);

/// Spins within n^{1/2 + epsilon} of the center, ascending.
std::vector<HalfInteger> concentration_set(const ModelParams &params);

/// The unrotated block state: diagonal entries c p^i, c = (1 - p) / (1 - p^{2j+1}).
RealVector block_spectrum(const ModelParams &params, HalfInteger j);
HermitianMatrix block_state_zero(const ModelParams &params, HalfInteger j);

/// U_j(u / sqrt(n)) block_state_zero U_j(u / sqrt(n))^dagger.
///
/// Spectral components with weight below 1e-18 relative to the largest are dropped; they are
/// below the resolution of a unit-trace double-precision matrix.
HermitianMatrix block_state(const ModelParams &params, HalfInteger j, LocalParam u);

/// Rotated eigenvectors and eigenvalues of block_state: matrix = Y diag(lambda) Y^dagger.
struct BlockFactor {
    ComplexMatrix vectors;
    RealVector values;
};

/// The leading spectral components of block_state whose eigenvalues exceed `relative_floor`
/// times the largest.
BlockFactor block_factor(const ModelParams &params, HalfInteger j, LocalParam u, double relative_floor);

struct EnsembleOptions {
    /// Only blocks in the concentration set.
    bool concentration_only = false;
    /// Worker threads; 0 means hardware concurrency.
    unsigned workers = 1;
};

EnsembleState ensemble(const ModelParams &params, LocalParam u, const EnsembleOptions &options = {});

}  // namespace qlan

#endif
