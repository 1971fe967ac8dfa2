// Copyright 2026 The mpent Authors
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

// Small derivative-free optimizers shared by the variational measures and
// the metrology module.

#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace mpent::opt {

struct ScalarMin {
    double x = 0;
    double f = 0;
    int evaluations = 0;
};

/// Golden-section minimization of a unimodal f on [lo, hi].
template <class F>
ScalarMin golden_section(F&& f, double lo, double hi, double xtol = 1e-12, int max_iter = 500) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    int evals = 2;
    for (int it = 0; it < max_iter && (b - a) > xtol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return fc < fd ? ScalarMin{c, fc, evals} : ScalarMin{d, fd, evals};
}

struct VectorMin {
    std::vector<double> x;
    double f = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Hooke-Jeeves style compass search: poll +-step on every coordinate, move on
/// improvement, halve the step otherwise. Stops when step < min_step.
template <class F>
VectorMin pattern_search(F&& f, std::vector<double> x, double step, double min_step = 1e-10,
                         int max_evaluations = 200000) {
    double fx = f(x);
    int evals = 1;
    while (step >= min_step && evals < max_evaluations) {
        bool moved = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (double dir : {1.0, -1.0}) {
                std::vector<double> y = x;
                y[i] += dir * step;
                const double fy = f(y);
                ++evals;
                if (fy < fx) {
                    x = std::move(y);
                    fx = fy;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) step *= 0.5;
    }
    return {std::move(x), fx, evals, step < min_step};
}

}  // namespace mpent::opt
