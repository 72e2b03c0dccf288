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

#ifndef QLAN_QUADRATURE_HPP
#define QLAN_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace qlan {

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(std::size_t count, double a = -1, double b = 1);

/// Resolution of a polar plane grid.
struct QuadratureSpec {
    std::size_t radial = 200;
    std::size_t angular = 256;
    /// Radius in standard deviations beyond the distance from the grid center to the
    /// distribution center.
    double radius_sd = 6;
};

/// Polar grid over a disk: Gauss-Legendre in the radius, uniform in the angle.
///
/// Points are ordered radius-major. Weights include the polar area element r dr dtheta.
struct PolarGrid {
    double center_x = 0;
    double center_y = 0;
    double radius = 0;
    std::size_t radial = 0;
    std::size_t angular = 0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> r;
    std::vector<double> weight;

    PolarGrid(double cx, double cy, double radius, std::size_t radial, std::size_t angular);

    std::size_t size() const {
        return x.size();
    }
};

/// Sum of values in a fixed pairwise order, independent of thread scheduling.
double pairwise_sum(const double *values, std::size_t count);
inline double pairwise_sum(const std::vector<double> &values) {
    return pairwise_sum(values.data(), values.size());
}

}  // namespace qlan

#endif
