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

#include "dhoop/model.hpp"

#include <cmath>
#include <stdexcept>

#include "dhoop/ini.hpp"

namespace dhoop {

void PlantParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string("PlantParams: ") + name +
                                        " must be strictly positive and finite");
        }
    };
    positive(R_o, "R_o");
    positive(R_i, "R_i");
    positive(R_b, "R_b");
    positive(m, "m");
    positive(I, "I");
    positive(g, "g");
    if (!(b >= 0.0) || !std::isfinite(b)) {
        throw std::invalid_argument("PlantParams: b must be nonnegative and finite");
    }
    if (!(R_b < R_i && R_i < R_o)) {
        throw std::invalid_argument("PlantParams: radii must satisfy R_b < R_i < R_o");
    }
    // Solid-ball upper bound on the moment of inertia, with 5% slack.
    const double solid = 0.4 * m * R_b * R_b;
    if (I > solid * 1.05) {
        throw std::invalid_argument("PlantParams: I exceeds the solid-ball bound (2/5) m R_b^2");
    }
}

PlantParams PlantParams::from_file(const std::string& path) {
    const IniFile ini = IniFile::load(path);
    PlantParams p;
    auto pick = [&](const char* key, double& out) {
        if (auto v = ini.get_double("plant", key)) out = *v;
    };
    pick("R_o", p.R_o);
    pick("R_i", p.R_i);
    pick("R_b", p.R_b);
    pick("m", p.m);
    pick("I", p.I);
    pick("b", p.b);
    pick("g", p.g);
    p.validate();
    return p;
}

bool RollState::all_finite() const {
    return std::isfinite(theta) && std::isfinite(theta_dot) && std::isfinite(psi) &&
           std::isfinite(psi_dot);
}

RollCoeffs outer_coeffs(const PlantParams& p) {
    const double roll_radius = p.R_o - p.R_b;
    const double ratio = p.R_o / p.R_b;
    RollCoeffs c;
    c.a_bar = p.m * roll_radius * roll_radius + p.I * ratio * ratio;
    c.b_bar = p.b * ratio * ratio;
    c.c_bar = p.m * p.g * roll_radius;
    c.d_bar = -c.b_bar;
    c.e_bar = p.I * ratio * (ratio + 1.0);
    return c;
}

RollCoeffs inner_coeffs(const PlantParams& p) {
    const double roll_radius = p.R_i + p.R_b;
    const double ratio = p.R_i / p.R_b;
    RollCoeffs c;
    c.a_bar = p.m * roll_radius * roll_radius + p.I * ratio * ratio;
    c.b_bar = p.b * ratio * ratio;
    c.c_bar = p.m * p.g * roll_radius;
    c.d_bar = -c.b_bar;
    c.e_bar = p.I * ratio * (ratio - 1.0);
    return c;
}

static RollState roll_deriv(const RollState& x, double u, const RollCoeffs& c) {
    RollState dx;
    dx.theta = x.theta_dot;
    dx.theta_dot = u;
    dx.psi = x.psi_dot;
    dx.psi_dot = (-c.b_bar * x.psi_dot - c.c_bar * std::sin(x.psi) - c.d_bar * x.theta_dot +
                  c.e_bar * u) /
                 c.a_bar;
    return dx;
}

RollState f_s1(const RollState& x, double u, const RollCoeffs& c) {
    return roll_deriv(x, u, c);
}

RollState f_s3(const RollState& x, double u, const RollCoeffs& c) {
    return roll_deriv(x, u, c);
}

FreeFallState f_s2_polar(const FreeFallState& x, double u, const PlantParams& p, double r_min) {
    if (x.r < r_min) {
        throw std::domain_error("f_s2_polar: degenerate radius r < r_min");
    }
    FreeFallState dx;
    dx.theta = x.theta_dot;
    dx.theta_dot = u;
    dx.psi = x.psi_dot;
    dx.psi_dot = -(p.g * std::sin(x.psi) + 2.0 * x.psi_dot * x.r_dot) / x.r;
    dx.r = x.r_dot;
    dx.r_dot = x.r * x.psi_dot * x.psi_dot + p.g * std::cos(x.psi);
    dx.phi = x.phi_dot;
    dx.phi_dot = 0.0;
    return dx;
}

RollingKinematics rolling_kinematics(const RollState& x, const PlantParams& p, Hoop hoop) {
    RollingKinematics k;
    if (hoop == Hoop::Outer) {
        k.v = -(p.R_o - p.R_b) * x.psi_dot;
        k.phi_dot = (p.R_o / p.R_b) * (x.theta_dot - x.psi_dot);
    } else {
        k.v = -(p.R_i + p.R_b) * x.psi_dot;
        k.phi_dot = -(p.R_i / p.R_b) * (x.theta_dot - x.psi_dot);
    }
    return k;
}

Eigen::Vector2d ball_position(const RollState& x, const PlantParams& p, Hoop hoop) {
    const double r = (hoop == Hoop::Outer) ? (p.R_o - p.R_b) : (p.R_i + p.R_b);
    return {r * std::cos(x.psi), r * std::sin(x.psi)};
}

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * M_PI);
    if (w <= -M_PI) w = M_PI;
    return w;
}

}  // namespace dhoop
