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

#ifndef QLAN_IRREPS_HPP
#define QLAN_IRREPS_HPP

#include <compare>
#include <string>
#include <vector>

#include "qlan/numerics.hpp"

namespace qlan {

/// Total spin j, stored as the integer 2j.
class HalfInteger {
   public:
    constexpr HalfInteger() = default;
    /// Throws DomainError for negative input.
    static HalfInteger from_twice(int two_j);

    constexpr int twice() const {
        return two_j_;
    }
    constexpr double value() const {
        return two_j_ / 2.0;
    }
    /// Dimension 2j+1 of the irrep.
    constexpr int dim() const {
        return two_j_ + 1;
    }
    std::string str() const;

    constexpr auto operator<=>(const HalfInteger &) const = default;

   private:
    constexpr explicit HalfInteger(int two_j) : two_j_(two_j) {
    }
    int two_j_ = 0;
};

/// A point of the local parameter plane.
struct LocalParam {
    double x = 0;
    double y = 0;

    double norm() const;
    /// alpha = -y + i x, the complex amplitude the parameter maps to.
    Complex alpha() const {
        return {-y, x};
    }
    /// Arg(alpha); zero at the origin.
    double phase() const;
    bool finite() const;

    LocalParam operator-() const {
        return {-x, -y};
    }
    LocalParam operator+(const LocalParam &o) const {
        return {x + o.x, y + o.y};
    }
    LocalParam operator/(double s) const {
        return {x / s, y / s};
    }
    bool operator==(const LocalParam &) const = default;
};

/// Raising, lowering and z operators in the basis |j, j - i>, i = 0..2j.
struct LadderOps {
    ComplexMatrix plus;
    ComplexMatrix minus;
    ComplexMatrix z;
};

LadderOps ladder_ops(HalfInteger j);

/// The Hermitian generator u_x (J+ + J-) + u_y (J+ - J-)/i.
///
/// At j = 1/2 this is u_x sigma_x + u_y sigma_y, so exp(i G) is the qubit rotation with
/// angle |u| and the highest weight vector maps to a coherent vector with
/// zeta = e^{i phase} sin|u|.
HermitianMatrix rotation_generator(HalfInteger j, LocalParam u);

/// U_j(u) = exp(i rotation_generator(j, u)), via the eigendecomposition.
ComplexMatrix rotation_unitary(HalfInteger j, LocalParam u);

/// U_j(u) * vectors, by a Taylor series of the tridiagonal generator split into
/// substeps of norm at most 2.
///
/// Cost is linear in the dimension per column, so it is the route used for large blocks.
ComplexMatrix apply_rotation(HalfInteger j, LocalParam u, const ComplexMatrix &vectors);

/// The first `count` columns of U_j(u).
ComplexMatrix rotation_columns(HalfInteger j, LocalParam u, int count);

/// Coordinates of U_j(w)|j,j> in the descending-m basis.
///
/// Throws DomainError when |w| >= pi/2.
ComplexVector spin_coherent_coords(HalfInteger j, LocalParam w);

/// The first `count` coordinates of spin_coherent_coords, without the domain check on the count.
ComplexVector spin_coherent_prefix(HalfInteger j, LocalParam w, int count);

/// log C(n, k) from log-gamma differences.
double log_binomial(double n, double k);

}  // namespace qlan

#endif
