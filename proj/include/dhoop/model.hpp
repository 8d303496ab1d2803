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

#ifndef DHOOP_MODEL_HPP
#define DHOOP_MODEL_HPP

#include <Eigen/Dense>
#include <string>

namespace dhoop {

/**
 * @brief Physical constants of the double-hoop rig.
 *
 * A ball of radius R_b rolls inside an outer hoop of radius R_o and can land
 * on a concentric inner hoop of radius R_i. Both hoops spin together; the
 * commanded input of the whole system is the hoop angular acceleration.
 *
 * Coordinate convention used everywhere: the x-axis points downward (along
 * gravity) and the angle psi is measured from the downward vertical, so the
 * rest point on the outer hoop is psi = 0 and the balance point on top of the
 * inner hoop is psi = pi.
 */
struct PlantParams {
    double R_o = 0.0958;    ///< outer hoop radius [m]
    double R_i = 0.0438;    ///< inner hoop radius [m]
    double R_b = 0.0077;    ///< ball radius [m]
    double m = 0.032;       ///< ball mass [kg]
    double I = 1.28e-6;     ///< ball moment of inertia [kg m^2]
    double b = 1.4e-6;      ///< rolling friction coefficient [N m s]
    double g = 9.81;        ///< gravitational acceleration [m/s^2]

    /// Throws std::invalid_argument when a field is non-positive, the radii
    /// are not ordered R_b < R_i < R_o, or I exceeds the solid-ball bound
    /// (2/5) m R_b^2 by more than 5%.
    void validate() const;

    /// Reads keys R_o, R_i, R_b, m, I, b, g from a key = value file.
    /// Keys may live in a [plant] section or at top level. Missing keys keep
    /// their defaults. Validates before returning.
    static PlantParams from_file(const std::string& path);
};

/// Coefficients of the rolling ODE  a psidd + b psid + c sin(psi) + d thetad = e thetadd.
struct RollCoeffs {
    double a_bar = 0.0;
    double b_bar = 0.0;
    double c_bar = 0.0;
    double d_bar = 0.0;
    double e_bar = 0.0;
};

/// State of a rolling mode (S1 outer hoop or S3 inner hoop).
struct RollState {
    double theta = 0.0;      ///< hoop angle [rad]
    double theta_dot = 0.0;  ///< hoop angular velocity [rad/s]
    double psi = 0.0;        ///< ball angle from downward vertical [rad]
    double psi_dot = 0.0;    ///< ball angular velocity [rad/s]

    Eigen::Vector4d vec() const { return {theta, theta_dot, psi, psi_dot}; }
    static RollState from_vec(const Eigen::Vector4d& v) {
        return {v[0], v[1], v[2], v[3]};
    }
    bool all_finite() const;
};

/// State of the free-fall mode (S2). The hoop keeps integrating its input.
struct FreeFallState {
    double theta = 0.0;
    double theta_dot = 0.0;
    double psi = 0.0;        ///< polar angle of the ball center [rad]
    double psi_dot = 0.0;
    double r = 0.0;          ///< radial position of the ball center [m]
    double r_dot = 0.0;
    double phi = 0.0;        ///< ball spin angle (inertial) [rad]
    double phi_dot = 0.0;    ///< ball spin rate, constant during free fall
};

enum class Hoop { Outer, Inner };

/// Rolling coefficients for the outer hoop (mode S1).
RollCoeffs outer_coeffs(const PlantParams& p);

/// Rolling coefficients for the inner hoop (mode S3).
RollCoeffs inner_coeffs(const PlantParams& p);

/// Vector field of mode S1; u is the hoop angular acceleration [rad/s^2].
RollState f_s1(const RollState& x, double u, const RollCoeffs& c);

/// Vector field of mode S3 (same structure, inner coefficients).
RollState f_s3(const RollState& x, double u, const RollCoeffs& c);

/**
 * @brief Vector field of the free-fall mode in polar coordinates.
 *
 * rdd = r psid^2 + g cos(psi), psidd = -(g sin(psi) + 2 psid rd)/r,
 * phidd = 0 and thetadd = u (the input still actuates the hoop while the
 * ball is airborne; pass u = 0 to freeze the hoop rate).
 *
 * Throws std::domain_error when r < r_min (degenerate radius).
 */
FreeFallState f_s2_polar(const FreeFallState& x, double u, const PlantParams& p,
                         double r_min = 1e-6);

/// Translational velocity of the ball center and its spin rate while rolling.
/// Outer: v = -(R_o - R_b) psid, phid = (R_o/R_b)(thetad - psid).
/// Inner: v = -(R_i + R_b) psid, phid = -(R_i/R_b)(thetad - psid)
/// (the spin angle has the opposite orientation on the inner hoop).
struct RollingKinematics {
    double v = 0.0;        ///< translational velocity [m/s]
    double phi_dot = 0.0;  ///< spin rate [rad/s]
};
RollingKinematics rolling_kinematics(const RollState& x, const PlantParams& p, Hoop hoop);

/// Ball-center position for a rolling state; contact radius R_o-R_b or R_i+R_b.
Eigen::Vector2d ball_position(const RollState& x, const PlantParams& p, Hoop hoop);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

}  // namespace dhoop

#endif  // DHOOP_MODEL_HPP
