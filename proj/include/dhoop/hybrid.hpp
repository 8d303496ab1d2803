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

#ifndef DHOOP_HYBRID_HPP
#define DHOOP_HYBRID_HPP

#include <functional>
#include <string>
#include <vector>

#include "dhoop/model.hpp"

namespace dhoop {

enum class Mode { S1, S2, S3 };

const char* to_string(Mode m);

/// Guard identifiers; a transition is armed when the guard value is > 0.
/// G1: S1 -> S2 (ball leaves the outer hoop)
/// G2: S2 -> S1 (ball hits the outer hoop)
/// G3: S2 -> S3 (ball hits the inner hoop)
/// G4: S3 -> S2 (ball leaves the inner hoop)
enum class GuardId { G1, G2, G3, G4 };

const char* to_string(GuardId g);

/**
 * @brief Full hybrid state: mode tag plus the 8-tuple
 * (theta, theta_dot, psi, psi_dot, r, r_dot, phi, phi_dot).
 *
 * In the rolling modes the radial fields are pinned (S1: r = R_o - R_b,
 * S3: r = R_i + R_b, r_dot = 0) and (phi, phi_dot) are derived from the
 * rolling constraint; canonicalize() restores both.
 */
struct HybridState {
    Mode mode = Mode::S1;
    double theta = 0.0;
    double theta_dot = 0.0;
    double psi = 0.0;
    double psi_dot = 0.0;
    double r = 0.0;
    double r_dot = 0.0;
    double phi = 0.0;
    double phi_dot = 0.0;

    RollState roll() const { return {theta, theta_dot, psi, psi_dot}; }
    FreeFallState freefall() const {
        return {theta, theta_dot, psi, psi_dot, r, r_dot, phi, phi_dot};
    }

    /// Re-pins r, r_dot and re-derives phi, phi_dot in the rolling modes.
    void canonicalize(const PlantParams& p);

    /// Ball-center Cartesian position (x downward, y sideways).
    Eigen::Vector2d position() const;

    bool all_finite() const;

    /// Rolling state at rest on the outer hoop bottom.
    static HybridState rest_s1(const PlantParams& p);
    /// Rolling state on the outer hoop with the given angles/rates.
    static HybridState on_outer(const RollState& x, const PlantParams& p);
    /// Rolling state on the inner hoop with the given angles/rates.
    static HybridState on_inner(const RollState& x, const PlantParams& p);
};

/// Signed guard value; the transition is armed when it is positive.
/// Throws std::invalid_argument when the guard is not admissible for s.mode.
double guard_value(const HybridState& s, const PlantParams& p, GuardId which);

/// Guards that may fire from the given mode, in tie-break order.
std::vector<GuardId> admissible_guards(Mode mode);

/// Reset maps. Each requires the matching source mode and an armed (>= 0 up
/// to tol) guard; they throw std::invalid_argument otherwise.
HybridState reset_s1_to_s2(const HybridState& s, const PlantParams& p);
HybridState reset_s2_to_s1(const HybridState& s, const PlantParams& p);
HybridState reset_s2_to_s3(const HybridState& s, const PlantParams& p);
HybridState reset_s3_to_s2(const HybridState& s, const PlantParams& p);

/// Applies the reset map of the given guard.
HybridState apply_reset(const HybridState& s, const PlantParams& p, GuardId which);

struct SimOptions {
    double step = 1e-3;       ///< fixed RK4 step [s]
    double event_tol = 1e-9;  ///< guard localization tolerance on time [s]
    int max_events = 50;      ///< chattering protection
    double t_end = 1.0;       ///< horizon [s]
    bool s2_input_active = true;  ///< keep thetadd = u during free fall
    double r_min = 1e-6;      ///< degenerate-radius threshold in S2 [m]

    void validate() const;
};

struct TransitionEvent {
    double t = 0.0;
    GuardId guard = GuardId::G1;
    HybridState pre;
    HybridState post;
};

struct SimSample {
    double t = 0.0;
    HybridState state;
    double u = 0.0;
};

/// Recorded hybrid trajectory: per-step samples plus transition events.
struct SimTrace {
    std::vector<SimSample> samples;
    std::vector<TransitionEvent> events;

    const HybridState& final_state() const { return samples.back().state; }
    double final_time() const { return samples.back().t; }

    /// CSV with header t,mode,theta,theta_dot,psi,psi_dot,r,r_dot,phi,phi_dot,u
    void save_csv(const std::string& path) const;
    /// Companion CSV: t,guard plus pre_*/post_* state columns.
    void save_events_csv(const std::string& path) const;
};

using Controller = std::function<double(double, const HybridState&)>;

/// Thrown on nonfinite states (blowup) or when max_events is exceeded.
struct SimulationError : std::runtime_error {
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * @brief Event-detected hybrid simulation.
 *
 * Fixed-step RK4 within the active mode; when an admissible guard changes
 * sign across a step the crossing is localized by bisection on the partial
 * step, the reset map is applied, and integration resumes. When several
 * guards cross in the same step the earliest crossing wins; exact ties break
 * by GuardId order. Deterministic: identical inputs give identical traces.
 */
SimTrace simulate(const HybridState& x0, const Controller& controller, const PlantParams& p,
                  const SimOptions& opts);

}  // namespace dhoop

#endif  // DHOOP_HYBRID_HPP
