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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qlan/errors.hpp"

namespace qlan {

HalfInteger HalfInteger::from_twice(int two_j) {
    if (two_j < 0) {
        throw DomainError("HalfInteger: 2j must be nonnegative, got " + std::to_string(two_j));
    }
    return HalfInteger(two_j);
}

std::string HalfInteger::str() const {
    if (two_j_ % 2 == 0) {
        return std::to_string(two_j_ / 2);
    }
    return std::to_string(two_j_) + "/2";
}

double LocalParam::norm() const {
    return std::hypot(x, y);
}

double LocalParam::phase() const {
    if (x == 0 && y == 0) {
        return 0;
    }
    return std::atan2(x, -y);
}

bool LocalParam::finite() const {
    return std::isfinite(x) && std::isfinite(y);
}

static void require_finite(LocalParam u, const char *what) {
    if (!u.finite()) {
        throw DomainError(std::string(what) + ": local parameter must be finite");
    }
}

// b[i] = <j, j-i+1| J+ |j, j-i> = sqrt(i (2j+1-i)), with b[0] = 0.
static RealVector ladder_coefficients(HalfInteger j) {
    int d = j.dim();
    RealVector b(d);
    b[0] = 0;
    for (int i = 1; i < d; i++) {
        b[i] = std::sqrt(static_cast<double>(i) * (d - i));
    }
    return b;
}

LadderOps ladder_ops(HalfInteger j) {
    int d = j.dim();
    RealVector b = ladder_coefficients(j);
    LadderOps ops{ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d)};
    for (int i = 0; i < d; i++) {
        ops.z(i, i) = j.value() - i;
        if (i > 0) {
            ops.plus(i - 1, i) = b[i];
            ops.minus(i, i - 1) = b[i];
        }
    }
    return ops;
}

HermitianMatrix rotation_generator(HalfInteger j, LocalParam u) {
    require_finite(u, "rotation_generator");
    LadderOps ops = ladder_ops(j);
    Complex cp(u.x, -u.y);
    Complex cm(u.x, u.y);
    return HermitianMatrix::trusted(cp * ops.plus + cm * ops.minus);
}

ComplexMatrix rotation_unitary(HalfInteger j, LocalParam u) {
    return unitary_exp(rotation_generator(j, u));
}

ComplexMatrix apply_rotation(HalfInteger j, LocalParam u, const ComplexMatrix &vectors) {
    require_finite(u, "apply_rotation");
    int d = j.dim();
    if (vectors.rows() != d) {
        throw ValidationError("apply_rotation: vectors have " + std::to_string(vectors.rows()) +
                              " rows, expected " + std::to_string(d));
    }
    double norm = u.norm();
    if (norm == 0 || d == 1) {
        return vectors;
    }
    // The generator's spectrum is {2m |u|}, so its norm is 2j |u|.
    int steps = std::max(1, static_cast<int>(std::ceil(j.twice() * norm / 2)));
    double h = 1.0 / steps;
    RealVector b = ladder_coefficients(j);
    Eigen::ArrayXcd up = b.tail(d - 1).cast<Complex>().array();
    // i h (cp J+ + cm J-)
    Complex cp = Complex(0, h) * Complex(u.x, -u.y);
    Complex cm = Complex(0, h) * Complex(u.x, u.y);

    // Rows at or beyond `hi` are zero; J- moves support down by one row per Taylor term.
    int hi = d;
    while (hi > 1 && vectors.row(hi - 1).isZero(0)) {
        hi--;
    }
    ComplexMatrix current = vectors;
    ComplexMatrix term(d, vectors.cols());
    ComplexMatrix next(d, vectors.cols());
    for (int s = 0; s < steps; s++) {
        ComplexMatrix sum = current;
        double scale = current.topRows(hi).cwiseAbs2().maxCoeff();
        if (scale == 0) {
            break;
        }
        int top = hi;
        term.topRows(top) = current.topRows(top);
        for (int k = 1; k < 80; k++) {
            int grown = std::min(d, top + 1);
            next.topRows(grown).setZero();
            if (top > 1) {
                next.topRows(top - 1) = (term.middleRows(1, top - 1).array().colwise() * up.head(top - 1)).matrix() * cp;
            }
            int lower = std::min(top, d - 1);
            next.middleRows(1, lower) += (term.topRows(lower).array().colwise() * up.head(lower)).matrix() * cm;
            next.topRows(grown) /= static_cast<double>(k);
            term.swap(next);
            top = grown;
            sum.topRows(top) += term.topRows(top);
            if (term.topRows(top).cwiseAbs2().maxCoeff() <= 1e-36 * scale) {
                break;
            }
        }
        current.swap(sum);
        hi = top;
        while (hi > 1 && current.row(hi - 1).cwiseAbs2().maxCoeff() <= 1e-44 * scale) {
            hi--;
        }
        current.bottomRows(d - hi).setZero();
    }
    return current;
}

ComplexMatrix rotation_columns(HalfInteger j, LocalParam u, int count) {
    int d = j.dim();
    count = std::clamp(count, 0, d);
    return apply_rotation(j, u, ComplexMatrix::Identity(d, count));
}

double log_binomial(double n, double k) {
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

ComplexVector spin_coherent_prefix(HalfInteger j, LocalParam w, int count) {
    require_finite(w, "spin_coherent_coords");
    double a = w.norm();
    if (a >= std::numbers::pi / 2) {
        std::ostringstream msg;
        msg << "spin_coherent_coords: |w| = " << a << " is outside the principal domain |w| < pi/2";
        throw DomainError(msg.str());
    }
    int d = j.dim();
    count = std::clamp(count, 0, d);
    ComplexVector out = ComplexVector::Zero(count);
    if (count == 0) {
        return out;
    }
    int two_j = j.twice();
    double log_cos = std::log(std::cos(a));
    double tan_a = std::tan(a);
    Complex phase = std::polar(1.0, w.phase());
    double start = two_j * log_cos;
    if (start > -700) {
        // |c_{k+1}| / |c_k| = tan|w| sqrt((2j - k) / (k + 1))
        double mag = std::exp(start);
        Complex ph = 1;
        for (int k = 0; k < count; k++) {
            out[k] = mag * ph;
            mag *= tan_a * std::sqrt(static_cast<double>(two_j - k) / (k + 1));
            ph *= phase;
        }
        return out;
    }
    double log_sin = std::log(std::sin(a));
    double phi = w.phase();
    for (int k = 0; k < count; k++) {
        double lm = 0.5 * log_binomial(two_j, k) + k * log_sin + (two_j - k) * log_cos;
        out[k] = std::polar(std::exp(lm), k * phi);
    }
    return out;
}

ComplexVector spin_coherent_coords(HalfInteger j, LocalParam w) {
    return spin_coherent_prefix(j, w, j.dim());
}

}  // namespace qlan
