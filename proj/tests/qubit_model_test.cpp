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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "qlan/errors.hpp"

using namespace qlan;
using namespace qlan::testing;

namespace {

HalfInteger spin(int two_j) {
    return HalfInteger::from_twice(two_j);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); r++) {
        for (Eigen::Index c = 0; c < a.cols(); c++) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

// The single-qubit state rotated by u, built from the closed-form 2x2 rotation.
ComplexMatrix qubit_state(double mu, LocalParam u) {
    double r = u.norm();
    double phi = u.phase();
    ComplexMatrix rot(2, 2);
    rot << std::cos(r), -std::polar(1.0, -phi) * std::sin(r), std::polar(1.0, phi) * std::sin(r), std::cos(r);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = mu;
    d(1, 1) = 1 - mu;
    return rot * d * rot.adjoint();
}

}  // namespace

TEST(ModelParams, Domain) {
    EXPECT_NO_THROW((ModelParams{4, 1.0, 0.1}.validate()));
    EXPECT_THROW((ModelParams{0, 0.75, 0.1}.validate()), DomainError);
    EXPECT_THROW((ModelParams{4, 0.5, 0.1}.validate()), DomainError);
    EXPECT_THROW((ModelParams{4, 0.75, 0.5}.validate()), DomainError);
    EXPECT_DOUBLE_EQ((ModelParams{4, 0.75, 0.1}.p()), 1.0 / 3);
}

TEST(Spins, ParityFollowsN) {
    std::vector<HalfInteger> odd = spins_for(5);
    ASSERT_EQ(odd.size(), 3u);
    EXPECT_EQ(odd.front(), spin(1));
    EXPECT_EQ(odd.back(), spin(5));
    std::vector<HalfInteger> even = spins_for(4);
    ASSERT_EQ(even.size(), 3u);
    EXPECT_EQ(even.front(), spin(0));
    EXPECT_THROW(require_valid_spin(4, spin(1)), DomainError);
    EXPECT_THROW(require_valid_spin(4, spin(6)), DomainError);
}

TEST(Multiplicity, SmallCases) {
    EXPECT_EQ(multiplicity(2, spin(2)), 1u);
    EXPECT_EQ(multiplicity(2, spin(0)), 1u);
    EXPECT_EQ(multiplicity(1, spin(1)), 1u);
    EXPECT_EQ(multiplicity(4, spin(0)), 2u);
    EXPECT_THROW(multiplicity(4, spin(1)), DomainError);
}

TEST(Multiplicity, DimensionCountProperty) {
    for (int n = 1; n <= 60; n++) {
        // sum_j n_j (2j+1) = 2^n, checked in log space to avoid overflow.
        double total = 0;
        for (HalfInteger j : spins_for(n)) {
            total += std::exp(log_multiplicity(n, j) + std::log(j.dim()) - n * std::log(2.0));
            EXPECT_NEAR(log_multiplicity(n, j), std::log(static_cast<double>(multiplicity(n, j))),
                        1e-12 * std::max(1.0, std::log(static_cast<double>(multiplicity(n, j)))));
        }
        EXPECT_NEAR(total, 1, 1e-12) << n;
    }
}

TEST(BlockWeight, SingleQubitCarriesAllWeight) {
    for (double mu : {0.6, 0.75, 1.0}) {
        EXPECT_NEAR(block_weight({1, mu}, spin(1)), 1, 1e-15);
    }
}

TEST(BlockWeight, TwoQubitsAgainstSingletProjection) {
    double mu = 0.75;
    ComplexMatrix rho2 = kron(qubit_state(mu, {}), qubit_state(mu, {}));
    ComplexVector singlet = ComplexVector::Zero(4);
    singlet[1] = 1 / std::sqrt(2.0);
    singlet[2] = -1 / std::sqrt(2.0);
    double singlet_weight = singlet.dot(rho2 * singlet).real();
    EXPECT_NEAR(singlet_weight, 0.1875, 1e-15);
    EXPECT_NEAR(block_weight({2, mu}, spin(0)), singlet_weight, 1e-14);
    EXPECT_NEAR(block_weight({2, mu}, spin(2)), 1 - singlet_weight, 1e-14);
}

TEST(BlockWeight, PureStateLivesInTopBlock) {
    ModelParams params{9, 1.0};
    for (HalfInteger j : spins_for(9)) {
        EXPECT_EQ(block_weight(params, j), j.twice() == 9 ? 1.0 : 0.0);
    }
}

TEST(BlockWeight, NormalizationProperty) {
    for (double mu : {0.6, 0.75, 0.9, 1.0}) {
        for (int n : {1, 2, 3, 10, 57, 100, 333, 1000}) {
            double total = 0;
            for (HalfInteger j : spins_for(n)) {
                double w = block_weight({n, mu}, j);
                EXPECT_GE(w, 0);
                EXPECT_LE(w, 1);
                total += w;
            }
            EXPECT_NEAR(total, 1, 1e-10) << "n=" << n << " mu=" << mu;
        }
    }
}

TEST(BinomialFactor, ProductIdentity) {
    ModelParams params{20, 0.75};
    for (HalfInteger j : spins_for(20)) {
        int k = (20 + j.twice()) / 2;
        double binom = std::exp(log_binomial(20, k)) * std::pow(0.75, k) * std::pow(0.25, 20 - k);
        EXPECT_NEAR(block_weight(params, j), binom * binomial_factor(params, j), 1e-12);
    }
}

TEST(BinomialFactor, TendsToOneAtTheCenter) {
    double previous = 1e9;
    for (int n : {100, 1000, 10000}) {
        ModelParams params{n, 0.75};
        int two_j = static_cast<int>(std::lround(params.j_center())) * 2;
        double gap = std::abs(binomial_factor(params, spin(two_j)) - 1);
        EXPECT_LT(gap, previous);
        previous = gap;
    }
    EXPECT_LT(previous, 1e-3);
    double top = binomial_factor({30, 0.9}, spin(30));
    EXPECT_TRUE(std::isfinite(top));
    EXPECT_GT(top, 0);
}

TEST(ConcentrationSet, IntervalMembership) {
    ModelParams params{100, 0.75, 0.1};
    double half = std::pow(100.0, 0.6);
    std::vector<HalfInteger> expected;
    for (int two_j = 0; two_j <= 100; two_j += 2) {
        if (std::abs(two_j / 2.0 - 25) <= half) {
            expected.push_back(spin(two_j));
        }
    }
    EXPECT_EQ(concentration_set(params), expected);
    EXPECT_EQ(expected.front(), spin(20));
    EXPECT_EQ(expected.back(), spin(80));
    std::vector<HalfInteger> pure = concentration_set({64, 1.0});
    EXPECT_TRUE(std::find(pure.begin(), pure.end(), spin(64)) != pure.end());
}

TEST(ConcentrationSet, WeightGrowsWithN) {
    double previous = 0;
    for (int n : {50, 100, 200, 400}) {
        ModelParams params{n, 0.75, 0.1};
        double w = 0;
        for (HalfInteger j : concentration_set(params)) {
            w += block_weight(params, j);
        }
        EXPECT_GE(w, previous);
        previous = w;
    }
    EXPECT_GE(previous, 0.99);
    EXPECT_GT(previous, 1 - 10 * std::pow(400.0, -0.25));
}

TEST(BlockStateZero, Examples) {
    HermitianMatrix pure = block_state_zero({6, 1.0}, spin(6));
    EXPECT_EQ(pure(0, 0), Complex(1));
    EXPECT_EQ(pure.trace(), 1);
    HermitianMatrix half = block_state_zero({1, 0.75}, spin(1));
    EXPECT_NEAR(half(0, 0).real(), 0.75, 1e-15);
    EXPECT_NEAR(half(1, 1).real(), 0.25, 1e-15);
    for (int two_j = 0; two_j <= 400; two_j += 14) {
        EXPECT_NEAR(block_state_zero({400, 0.75}, spin(two_j)).trace(), 1, 1e-12);
    }
}

TEST(BlockState, RotationOfBlockStateZero) {
    ModelParams params{16, 0.8};
    HalfInteger j = spin(10);
    HermitianMatrix zero = block_state_zero(params, j);
    EXPECT_LE((block_state(params, j, {}).matrix() - zero.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    Rng rng(31);
    for (int trial = 0; trial < 10; trial++) {
        LocalParam u = random_param(rng, 2.0);
        HermitianMatrix rho = block_state(params, j, u);
        ComplexMatrix r = rotation_unitary(j, u / 4.0);
        EXPECT_LE((rho.matrix() - r * zero.matrix() * r.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        RealVector a = hermitian_eigenvalues(rho);
        RealVector b = hermitian_eigenvalues(zero);
        EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_NEAR(rho.trace(), 1, 1e-12);
    }
}

TEST(BlockState, SingleQubitClosedForm) {
    HermitianMatrix rho = block_state({1, 0.7}, spin(1), {0.2, 0});
    EXPECT_LE((rho.matrix() - qubit_state(0.7, {0.2, 0})).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Ensemble, SmallCases) {
    EnsembleState one = ensemble({1, 0.7}, {0.3, -0.1});
    ASSERT_EQ(one.blocks.size(), 1u);
    EXPECT_LE((one.blocks[0].matrix.matrix() - qubit_state(0.7, {0.3, -0.1})).cwiseAbs().maxCoeff(), 1e-14);
    EnsembleState two = ensemble({2, 0.75}, {});
    ASSERT_EQ(two.blocks.size(), 2u);
    EXPECT_NEAR(two.blocks[0].weight, 0.1875, 1e-14);
    EXPECT_NEAR(two.blocks[1].weight, 0.8125, 1e-14);
}

TEST(Ensemble, NormalizationProperty) {
    for (int n : {3, 40, 121, 200}) {
        EnsembleState ens = ensemble({n, 0.8}, {0.5, 0.5}, {false, 2});
        double total = 0;
        for (const BlockState &b : ens.blocks) {
            total += b.weight * b.matrix.trace();
        }
        EXPECT_NEAR(total, 1, 1e-10) << n;
    }
}

TEST(Ensemble, ConcentrationOnlyKeepsTheWindow) {
    ModelParams params{100, 0.75};
    EnsembleState ens = ensemble(params, {}, {true, 1});
    std::vector<HalfInteger> set = concentration_set(params);
    ASSERT_EQ(ens.blocks.size(), set.size());
    EXPECT_LT(ens.total_weight(), 1);
    EXPECT_GT(ens.total_weight(), 0.99);
}

TEST(Ensemble, ReproducesTensorPowerSpectrum) {
    for (double mu : {0.6, 0.9}) {
        for (int n = 1; n <= 6; n++) {
            LocalParam u{0.4, -0.7};
            LocalParam scaled = u / std::sqrt(static_cast<double>(n));
            ComplexMatrix full = qubit_state(mu, scaled);
            for (int k = 1; k < n; k++) {
                full = kron(full, qubit_state(mu, scaled));
            }
            RealVector exact = hermitian_eigenvalues(HermitianMatrix(full));
            std::vector<double> from_blocks;
            for (const BlockState &b : ensemble({n, mu}, u).blocks) {
                RealVector ev = hermitian_eigenvalues(b.matrix);
                for (Eigen::Index i = 0; i < ev.size(); i++) {
                    for (std::uint64_t c = 0; c < multiplicity(n, b.j); c++) {
                        from_blocks.push_back(b.weight * ev[i] / static_cast<double>(multiplicity(n, b.j)));
                    }
                }
            }
            std::sort(from_blocks.begin(), from_blocks.end());
            ASSERT_EQ(from_blocks.size(), static_cast<std::size_t>(exact.size()));
            for (std::size_t i = 0; i < from_blocks.size(); i++) {
                EXPECT_NEAR(from_blocks[i], exact[i], 1e-10);
            }
        }
    }
}
