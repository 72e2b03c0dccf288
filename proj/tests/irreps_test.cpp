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

#include "qlan/irreps.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "qlan/errors.hpp"

using namespace qlan;
using namespace qlan::testing;

namespace {

HalfInteger spin(int two_j) {
    return HalfInteger::from_twice(two_j);
}

}  // namespace

TEST(HalfInteger, StoresTwiceTheValue) {
    EXPECT_EQ(spin(3).dim(), 4);
    EXPECT_DOUBLE_EQ(spin(3).value(), 1.5);
    EXPECT_EQ(spin(3).str(), "3/2");
    EXPECT_EQ(spin(4).str(), "2");
    EXPECT_LT(spin(1), spin(2));
    EXPECT_THROW(spin(-1), DomainError);
}

TEST(LocalParam, PhaseConvention) {
    LocalParam u{0.3, 0.4};
    EXPECT_DOUBLE_EQ(u.norm(), 0.5);
    EXPECT_DOUBLE_EQ(u.phase(), std::arg(Complex(-0.4, 0.3)));
    EXPECT_EQ(LocalParam{}.phase(), 0);
}

TEST(LadderOps, SpinHalf) {
    LadderOps ops = ladder_ops(spin(1));
    ComplexMatrix plus(2, 2), z(2, 2);
    plus << 0, 1, 0, 0;
    z << 0.5, 0, 0, -0.5;
    EXPECT_EQ(ops.plus, plus);
    EXPECT_EQ(ops.z, z);
}

TEST(LadderOps, SpinOneSuperdiagonal) {
    LadderOps ops = ladder_ops(spin(2));
    EXPECT_DOUBLE_EQ(ops.plus(0, 1).real(), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(ops.plus(1, 2).real(), std::sqrt(2.0));
    EXPECT_EQ(ops.plus(0, 2), Complex(0));
}

TEST(LadderOps, CommutationRelations) {
    for (int two_j = 0; two_j <= 10; two_j++) {
        LadderOps ops = ladder_ops(spin(two_j));
        EXPECT_EQ(ops.minus, ops.plus.adjoint());
        ComplexMatrix c1 = ops.plus * ops.minus - ops.minus * ops.plus;
        EXPECT_LE((c1 - 2.0 * ops.z).cwiseAbs().maxCoeff(), 1e-12);
        ComplexMatrix c2 = ops.z * ops.plus - ops.plus * ops.z;
        EXPECT_LE((c2 - ops.plus).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(RotationUnitary, ZeroIsIdentity) {
    ComplexMatrix u = rotation_unitary(spin(5), {});
    EXPECT_LE((u - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RotationUnitary, SpinHalfClosedForm) {
    ComplexMatrix u = rotation_unitary(spin(1), {0.3, 0.4});
    double phi = std::arg(Complex(-0.4, 0.3));
    ComplexMatrix expected(2, 2);
    expected << std::cos(0.5), -std::polar(1.0, -phi) * std::sin(0.5), std::polar(1.0, phi) * std::sin(0.5),
        std::cos(0.5);
    EXPECT_LE((u - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(RotationUnitary, UnitarityAndHighestWeightColumnProperty) {
    Rng rng(21);
    for (int trial = 0; trial < 25; trial++) {
        HalfInteger j = random_spin(rng, 100);
        LocalParam u = random_param(rng, 1.0);
        ComplexMatrix r = rotation_unitary(j, u);
        int d = j.dim();
        EXPECT_LE((r * r.adjoint() - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
        ComplexVector coords = spin_coherent_coords(j, u);
        EXPECT_LE((r.col(0) - coords).cwiseAbs().maxCoeff(), 1e-9) << "2j=" << j.twice();
    }
}

TEST(ApplyRotation, MatchesDenseUnitaryProperty) {
    Rng rng(22);
    for (int trial = 0; trial < 25; trial++) {
        HalfInteger j = random_spin(rng, 80);
        LocalParam u = random_param(rng, 3.0);
        int d = j.dim();
        ComplexMatrix v = random_matrix(d, 3, rng);
        ComplexMatrix dense = rotation_unitary(j, u) * v;
        ComplexMatrix fast = apply_rotation(j, u, v);
        EXPECT_LE((dense - fast).cwiseAbs().maxCoeff(), 1e-9 * v.cwiseAbs().maxCoeff()) << "2j=" << j.twice();
    }
}

TEST(ApplyRotation, LeadingColumnsOfLargeSpin) {
    HalfInteger j = spin(600);
    LocalParam u{0.04, -0.03};
    ComplexMatrix cols = rotation_columns(j, u, 1);
    ComplexVector coords = spin_coherent_coords(j, u);
    EXPECT_LE((cols.col(0) - coords).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(cols.col(0).norm(), 1, 1e-12);
}

TEST(SpinCoherent, Origin) {
    ComplexVector v = spin_coherent_coords(spin(7), {});
    EXPECT_EQ(v[0], Complex(1));
    EXPECT_EQ(v.tail(7).norm(), 0);
}

TEST(SpinCoherent, SpinHalfAlongX) {
    ComplexVector v = spin_coherent_coords(spin(1), {0.7, 0});
    EXPECT_NEAR(std::abs(v[0] - std::cos(0.7)), 0, 1e-15);
    EXPECT_NEAR(std::abs(v[1] - Complex(0, std::sin(0.7))), 0, 1e-15);
}

TEST(SpinCoherent, CoordinateFormula) {
    HalfInteger j = spin(9);
    LocalParam w{0.4, 0.2};
    Complex zeta = std::polar(std::sin(w.norm()), w.phase());
    ComplexVector v = spin_coherent_coords(j, w);
    for (int k = 0; k < j.dim(); k++) {
        // m = j - k
        Complex expected = std::sqrt(std::exp(log_binomial(9, 9 - k))) * std::pow(zeta, k) *
                           std::pow(1 - std::norm(zeta), (9 - k) / 2.0);
        EXPECT_NEAR(std::abs(v[k] - expected), 0, 1e-13) << k;
    }
}

TEST(SpinCoherent, UnitNormProperty) {
    Rng rng(23);
    for (int trial = 0; trial < 100; trial++) {
        HalfInteger j = random_spin(rng, 40);
        LocalParam w = random_param(rng, 1.0);
        EXPECT_NEAR(spin_coherent_coords(j, w).norm(), 1, 1e-12);
    }
}

TEST(SpinCoherent, LogSpacePathForLargeSpin) {
    // cos(1.5)^4000 underflows, so the log-space branch is taken.
    ComplexVector v = spin_coherent_coords(spin(4000), {1.5, 0});
    EXPECT_TRUE(v.allFinite());
    EXPECT_NEAR(v.norm(), 1, 1e-10);
}

TEST(SpinCoherent, DomainBoundary) {
    EXPECT_THROW(spin_coherent_coords(spin(2), {M_PI / 2, 0}), DomainError);
    EXPECT_THROW(spin_coherent_coords(spin(2), {NAN, 0}), DomainError);
}

TEST(LogBinomial, OverflowSafeAgainstLogSum) {
    double direct = 0;
    for (int i = 1; i <= 2000; i++) {
        direct += std::log((2000.0 + i) / i);
    }
    EXPECT_NEAR(log_binomial(4000, 2000), direct, 1e-9 * direct);
    EXPECT_NEAR(std::exp(log_binomial(10, 3)), 120, 1e-10);
}
