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

#ifndef DHOOP_CONTROL_HPP
#define DHOOP_CONTROL_HPP

#include <functional>
#include <string>
#include <vector>

#include "dhoop/model.hpp"
#include "dhoop/trajectory.hpp"

namespace dhoop {

/// Jacobians of a rolling-mode vector field at a reference point.
struct LinearizationPoint {
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    Eigen::Vector4d B = Eigen::Vector4d::Zero();
    RollState x_ref;
    double u_ref = 0.0;
};

/// Analytic Jacobians of f_s1/f_s3 (pass the matching coefficients).
/// The only nonlinearity is sin(psi), so d(psidd)/d(psi) = -(c/a) cos(psi).
LinearizationPoint linearize(const RollCoeffs& c, const RollState& x_ref, double u_ref);

struct LqrWeights {
    Eigen::Matrix4d Q = Eigen::Vector4d(0.0, 1.0, 20.0, 1.0).asDiagonal();
    double R = 1.0;

    void validate() const;
};

/// Time-indexed Riccati matrices and feedback gain rows along a trajectory.
struct GainSchedule {
    std::vector<double> times;
    std::vector<Eigen::Matrix4d> S;
    std::vector<Eigen::RowVector4d> K;
    double max_asymmetry = 0.0;  ///< worst asymmetry seen before symmetrization

    Eigen::RowVector4d gain_at(double t) const;  ///< linear interpolation on K

    /// CSV t,K1,K2,K3,K4 (optionally followed by the 10 upper-triangle
    /// entries of S).
    void save_csv(const std::string& path, bool include_s = false) const;
    static GainSchedule load_csv(const std::string& path);
};

/// Thrown when the backward Riccati sweep blows up.
struct RiccatiDivergence : std::runtime_error {
    explicit RiccatiDivergence(const std::string& what) : std::runtime_error(what) {}
};

/// Time-varying system matrices A(t), B(t).
using SystemFn = std::function<void(double, Eigen::Matrix4d&, Eigen::Vector4d&)>;

/**
 * @brief Integrates the differential Riccati equation
 *   -Sdot = S A + A^T S - S B R^-1 B^T S + Q,  S(T_f) = Q,
 * backward with matrix RK4, storing S and K = R^-1 B^T S at the requested
 * times (which must be ascending and end at T_f).
 */
GainSchedule integrate_dre(const SystemFn& sys, const LqrWeights& w, double T_f,
                           const std::vector<double>& store_times, double step);

/// Backward Riccati pass along a trajectory with analytic linearization
/// about the linearly interpolated (x*(t), u*(t)). Step min(1e-3, h/10).
GainSchedule riccati_backward(const Trajectory& traj, const LqrWeights& w, const RollCoeffs& c);

/// Constant-gain LQR at an equilibrium, computed as the steady state of the
/// DRE (relative change < 1e-10 per step). Verifies the closed loop is
/// Hurwitz; throws RiccatiDivergence on stabilizability failure.
Eigen::RowVector4d stationary_lqr(const RollState& x_eq, const LqrWeights& w,
                                  const RollCoeffs& c);

/// Spectral abscissa (max real part of eigenvalues).
double spectral_abscissa(const Eigen::Matrix4d& M);

struct ControlOutput {
    double u = 0.0;            ///< saturated command
    double feedforward = 0.0;  ///< u*(t)
    double feedback = 0.0;     ///< -K(t) (x - x*(t)) before saturation
    bool saturated = false;
};

/// u(t) = u*(t) - K(t)(x - x*(t)), saturated to +/- traj.u_max.
/// Throws std::out_of_range when t is outside [0, T_f] (small slack).
ControlOutput control_law(double t, const RollState& x, const Trajectory& traj,
                          const GainSchedule& gains);

}  // namespace dhoop

#endif  // DHOOP_CONTROL_HPP
