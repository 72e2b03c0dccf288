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

#ifndef QLAN_CHANNELS_HPP
#define QLAN_CHANNELS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qlan/oscillator.hpp"
#include "qlan/qubit_model.hpp"

namespace qlan {

/// The isometry |j,m> -> |j-m> from a spin-j block into the first 2j+1 Fock levels.
struct EmbeddingMap {
    HalfInteger j;
    FockTruncation target;

    /// Throws TruncationError when the target has fewer than 2j+1 levels.
    void validate() const;
};

/// V_j rho V_j^dagger: rho in the top-left block, zeros elsewhere.
FockOperator embed_block(const HermitianMatrix &rho_j, const EmbeddingMap &emb);

struct ForwardOptions {
    /// Sum only over the concentration set, reporting the excluded weight.
    bool concentration_only = false;
};

struct ForwardImage {
    FockOperator state;
    double excluded_weight = 0;
};

/// sum_j p_n(j) V_j rho_j V_j^dagger over the blocks of `ens`.
ForwardImage forward_channel(const EnsembleState &ens, FockTruncation trunc, const ForwardOptions &options = {});

/// V_j^dagger P_j phi P_j V_j + (1 - Tr(P_j phi)) |j,j><j,j|.
///
/// `phi` is read as a truncation of a unit-trace state, so the mass it lost to truncation
/// counts as outside the block and goes to |j,j><j,j| with the rest of the complement.
HermitianMatrix inverse_channel_block(const FockOperator &phi, const EmbeddingMap &emb);

/// Block j of inverse_channel_block for every spin compatible with n, weighted by p_n(j).
EnsembleState inverse_channel(const FockOperator &phi, const ModelParams &params);

/// || V_j U_j(u/sqrt(n)) |j,j> - |sqrt(s) alpha_u> || with s = 2 mu - 1 when `mu` is given
/// and s = 2j/n otherwise. The norm includes the coherent tail beyond `trunc`.
double coherent_vector_distance(HalfInteger j, LocalParam u, int n, FockTruncation trunc,
                                std::optional<double> mu = std::nullopt);

/// Trace distance between U(u')U(v')|j,j> and U(u'+v')|j,j> with u' = u/sqrt(n), v' = v/sqrt(n).
double composition_defect(HalfInteger j, LocalParam u, LocalParam v, int n);

/// Nearest spin to the concentration center with the parity of n.
HalfInteger nearest_center_spin(const ModelParams &params);

/// A product grid of local parameters, min:max:steps on each axis.
struct GridAxis {
    double min = 0;
    double max = 0;
    int steps = 1;

    std::vector<double> values() const;
    std::string str() const;
};

struct ParamGrid {
    GridAxis x;
    GridAxis y;

    std::vector<LocalParam> points() const;
    std::string str() const;
};

struct PointDistances {
    LocalParam u;
    double forward = 0;
    double reverse = 0;
    /// max over the concentration set of ||V_j rho_j V_j^dagger - phi^u||_1.
    double blockwise = 0;
    /// Trace deficit of the truncated limit state.
    double truncation_tail = 0;
};

struct ConvergenceRecord {
    int n = 0;
    double mu = 0;
    double epsilon = 0;
    std::string grid;
    int fock_dim = 0;
    std::vector<PointDistances> points;
    double forward_sup = 0;
    double reverse_sup = 0;
    double blockwise_sup = 0;
    LocalParam forward_argmax;
    LocalParam reverse_argmax;
    LocalParam blockwise_argmax;
    /// Total weight of blocks outside the concentration set.
    double concentration_deficit = 0;
    /// Weight excluded from the forward sum (zero unless concentration_only).
    double excluded_weight = 0;
    /// Largest truncation tail over the grid.
    double truncation_bound = 0;
};

struct SweepOptions {
    bool concentration_only = false;
    bool blockwise = true;
    /// Override for the Fock dimension; 0 selects truncation_dimension.
    int fock_dim = 0;
    unsigned workers = 1;
};

/// Forward, reverse and blockwise distances for every (n, u) pair.
std::vector<ConvergenceRecord> convergence_sweep(double mu, double epsilon, const ParamGrid &grid,
                                                 const std::vector<int> &n_list,
                                                 const SweepOptions &options = {});

}  // namespace qlan

#endif
