/*
 Copyright 2026 The doublehoop authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef DHOOP_TRAJECTORY_HPP
#define DHOOP_TRAJECTORY_HPP

#include <string>
#include <vector>

#include "dhoop/model.hpp"

namespace dhoop {

/**
 * @brief Discrete state/input trajectory on N equidistant knots,
 * t_k = k * T_f / (N - 1). Inputs are interpreted first-order-hold.
 */
struct Trajectory {
    double T_f = 0.0;
    std::vector<double> times;
    std::vector<RollState> states;
    std::vector<double> inputs;

    // Solve metadata carried along for tracking and reporting.
    double u_max = 0.0;
    double objective = 0.0;
    double constraint_violation = 0.0;

    int knot_count() const { return static_cast<int>(times.size()); }

    /// Linear interpolation between knots; clamps t to [0, T_f].
    RollState state_at(double t) const;
    double input_at(double t) const;

    /// Linear resampling onto M equidistant knots (warm starts, refinement).
    Trajectory resampled(int M) const;

    /// Knots with equidistant times for the given T_f and N.
    static Trajectory zeros(double T_f, int N);

    /// CSV t,theta,theta_dot,psi,psi_dot,u plus a sidecar key = value
    /// metadata file ([trajectory] T_f, N, u_max, objective, ...).
    void save_csv(const std::string& csv_path, const std::string& meta_path) const;
    static Trajectory load_csv(const std::string& csv_path, const std::string& meta_path);
};

}  // namespace dhoop

#endif  // DHOOP_TRAJECTORY_HPP
