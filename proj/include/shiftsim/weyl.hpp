// Copyright 2026 The shiftsim Authors
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

#pragma once

// Dense clock/shift operators for small qudit dimensions. Used as an
// operator-level check of the anti-commutation constraint behind the
// two-axis codes; not on any hot path.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace shiftsim {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxWeylDimension = 64;

/// Logical operators X_L = X^shift_power, Z_L = Z^phase_power in dimension d.
struct WeylPair {
    int dimension = 2;
    int shift_power = 1;
    int phase_power = 1;

    void validate() const {
        if (dimension < 2) {
            throw Error(ErrorCode::InvalidGeometry, "Weyl dimension must be at least 2");
        }
        if (dimension > kMaxWeylDimension) {
            throw Error(ErrorCode::DimensionTooLarge, "dense Weyl oracle limited to d <= 64");
        }
        if (shift_power < 1 || shift_power >= dimension || phase_power < 1 || phase_power >= dimension) {
            throw Error(ErrorCode::InvalidGeometry, "powers must lie in [1, d)");
        }
    }
};

struct WeylMatrices {
    ComplexMatrix shift;  // X|j> = |j+1 mod d>
    ComplexMatrix phase;  // Z|j> = w^j |j>, w = exp(2 pi i / d)
};

inline WeylMatrices build_weyl_matrices(int d) {
    if (d < 2) {
        throw Error(ErrorCode::InvalidGeometry, "Weyl dimension must be at least 2");
    }
    if (d > kMaxWeylDimension) {
        throw Error(ErrorCode::DimensionTooLarge, "dense Weyl oracle limited to d <= 64, got " + std::to_string(d));
    }
    WeylMatrices m{ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d)};
    for (int j = 0; j < d; ++j) {
        m.shift((j + 1) % d, j) = 1.0;
        m.phase(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
    }
    return m;
}

inline ComplexMatrix matrix_power(const ComplexMatrix &m, int p) {
    ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < p; ++i) {
        out = out * m;
    }
    return out;
}

inline double max_abs(const ComplexMatrix &m) { return m.cwiseAbs().maxCoeff(); }

/// max-norm of the anticommutator X^a Z^b + Z^b X^a.
inline double anticommutator_residual(const WeylPair &pair) {
    pair.validate();
    auto w = build_weyl_matrices(pair.dimension);
    ComplexMatrix xl = matrix_power(w.shift, pair.shift_power);
    ComplexMatrix zl = matrix_power(w.phase, pair.phase_power);
    return max_abs(xl * zl + zl * xl);
}

/// Matrix verdict. Agrees with the arithmetic rule a*b = d/2 (mod d), d even.
inline bool anticommutes(const WeylPair &pair) { return anticommutator_residual(pair) <= 1e-10; }

/// All powers X^a, Z^b of one dimension, for sweeping every (a, b) pair
/// without rebuilding matrices.
class WeylTable {
public:
    explicit WeylTable(int d) : d_(d) {
        auto w = build_weyl_matrices(d);
        shift_powers_.push_back(ComplexMatrix::Identity(d, d));
        phase_powers_.push_back(ComplexMatrix::Identity(d, d));
        for (int p = 1; p < d; ++p) {
            shift_powers_.push_back(shift_powers_.back() * w.shift);
            phase_powers_.push_back(phase_powers_.back() * w.phase);
        }
    }

    int dimension() const { return d_; }

    double anticommutator_residual(int a, int b) const {
        WeylPair{d_, a, b}.validate();
        const auto &x = shift_powers_[a];
        const auto &z = phase_powers_[b];
        return max_abs(x * z + z * x);
    }

    bool anticommutes(int a, int b) const { return anticommutator_residual(a, b) <= 1e-10; }

private:
    int d_;
    std::vector<ComplexMatrix> shift_powers_;
    std::vector<ComplexMatrix> phase_powers_;
};

inline bool anticommutes_arithmetic(const WeylPair &pair) {
    return pair.dimension % 2 == 0 &&
           (static_cast<long long>(pair.shift_power) * pair.phase_power) % pair.dimension == pair.dimension / 2;
}

/// Max residual of Z^{k_h}|0_L> = |0_L> and Z^{k_h}|1_L> = -|1_L> for the
/// codewords built on multiples of k_v in dimension d = 2 k_v k_h.
inline double logical_z_residual(int d, int k_v, int k_h) {
    if (k_v < 1 || k_h < 1 || d != 2 * k_v * k_h) {
        throw Error(ErrorCode::InvalidGeometry, "need d = 2*k_v*k_h (d=" + std::to_string(d) + ", k_v=" +
                                                    std::to_string(k_v) + ", k_h=" + std::to_string(k_h) + ")");
    }
    auto w = build_weyl_matrices(d);
    ComplexVector zero = ComplexVector::Zero(d);
    ComplexVector one = ComplexVector::Zero(d);
    for (int j = 0; j < d; j += k_v) {
        ((j / k_v) % 2 == 0 ? zero : one)(j) = 1.0;
    }
    zero.normalize();
    one.normalize();
    ComplexMatrix zl = matrix_power(w.phase, k_h);
    double r0 = (zl * zero - zero).cwiseAbs().maxCoeff();
    double r1 = (zl * one + one).cwiseAbs().maxCoeff();
    return std::max(r0, r1);
}

inline bool verify_logical_z_action(int d, int k_v, int k_h) { return logical_z_residual(d, k_v, k_h) <= 1e-10; }

}  // namespace shiftsim
