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

#include "qlan/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "qlan/errors.hpp"

namespace qlan {

GaussRule gauss_legendre(std::size_t count, double a, double b) {
    if (count == 0) {
        throw DomainError("gauss_legendre: need at least one node");
    }
    // Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the Legendre recurrence.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(count);
    Eigen::VectorXd sub(count > 1 ? count - 1 : 0);
    for (std::size_t k = 1; k < count; k++) {
        double kk = static_cast<double>(k);
        sub[k - 1] = kk / std::sqrt(4 * kk * kk - 1);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    GaussRule rule;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    double half = (b - a) / 2;
    double mid = (b + a) / 2;
    for (std::size_t k = 0; k < count; k++) {
        double v = solver.eigenvectors()(0, k);
        rule.nodes[k] = mid + half * solver.eigenvalues()[k];
        rule.weights[k] = 2 * v * v * half;
    }
    return rule;
}

PolarGrid::PolarGrid(double cx, double cy, double radius_, std::size_t radial_, std::size_t angular_)
    : center_x(cx), center_y(cy), radius(radius_), radial(radial_), angular(angular_) {
    if (!(radius > 0) || radial == 0 || angular == 0) {
        throw DomainError("PolarGrid: radius and node counts must be positive");
    }
    GaussRule rule = gauss_legendre(radial, 0, radius);
    double dtheta = 2 * std::numbers::pi / static_cast<double>(angular);
    x.reserve(radial * angular);
    y.reserve(radial * angular);
    r.reserve(radial * angular);
    weight.reserve(radial * angular);
    for (std::size_t i = 0; i < radial; i++) {
        double ri = rule.nodes[i];
        double wi = rule.weights[i] * ri * dtheta;
        for (std::size_t k = 0; k < angular; k++) {
            double t = dtheta * static_cast<double>(k);
            x.push_back(cx + ri * std::cos(t));
            y.push_back(cy + ri * std::sin(t));
            r.push_back(ri);
            weight.push_back(wi);
        }
    }
}

double pairwise_sum(const double *values, std::size_t count) {
    if (count <= 8) {
        double s = 0;
        for (std::size_t k = 0; k < count; k++) {
            s += values[k];
        }
        return s;
    }
    std::size_t half = count / 2;
    return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

}  // namespace qlan
