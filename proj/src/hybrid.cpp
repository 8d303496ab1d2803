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

#include "dhoop/hybrid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dhoop {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::S1: return "S1";
        case Mode::S2: return "S2";
        case Mode::S3: return "S3";
    }
    return "?";
}

const char* to_string(GuardId g) {
    switch (g) {
        case GuardId::G1: return "G1";
        case GuardId::G2: return "G2";
        case GuardId::G3: return "G3";
        case GuardId::G4: return "G4";
    }
    return "?";
}

void HybridState::canonicalize(const PlantParams& p) {
    if (mode == Mode::S1) {
        r = p.R_o - p.R_b;
        r_dot = 0.0;
        phi = (theta - psi) * p.R_o / p.R_b;
        phi_dot = (p.R_o / p.R_b) * (theta_dot - psi_dot);
    } else if (mode == Mode::S3) {
        r = p.R_i + p.R_b;
        r_dot = 0.0;
        phi = -(theta - psi) * p.R_i / p.R_b;
        phi_dot = -(p.R_i / p.R_b) * (theta_dot - psi_dot);
    }
}

Eigen::Vector2d HybridState::position() const {
    return {r * std::cos(psi), r * std::sin(psi)};
}

bool HybridState::all_finite() const {
    for (double v : {theta, theta_dot, psi, psi_dot, r, r_dot, phi, phi_dot}) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

HybridState HybridState::rest_s1(const PlantParams& p) {
    return on_outer(RollState{}, p);
}

HybridState HybridState::on_outer(const RollState& x, const PlantParams& p) {
    HybridState s;
    s.mode = Mode::S1;
    s.theta = x.theta;
    s.theta_dot = x.theta_dot;
    s.psi = x.psi;
    s.psi_dot = x.psi_dot;
    s.canonicalize(p);
    return s;
}

HybridState HybridState::on_inner(const RollState& x, const PlantParams& p) {
    HybridState s;
    s.mode = Mode::S3;
    s.theta = x.theta;
    s.theta_dot = x.theta_dot;
    s.psi = x.psi;
    s.psi_dot = x.psi_dot;
    s.canonicalize(p);
    return s;
}

double guard_value(const HybridState& s, const PlantParams& p, GuardId which) {
    switch (which) {
        case GuardId::G1:
            if (s.mode != Mode::S1) break;
            return -p.g * std::cos(s.psi) - (p.R_o - p.R_b) * s.psi_dot * s.psi_dot;
        case GuardId::G2:
            if (s.mode != Mode::S2) break;
            return s.r - p.R_o + p.R_b;
        case GuardId::G3:
            if (s.mode != Mode::S2) break;
            return p.R_i + p.R_b - s.r;
        case GuardId::G4:
            if (s.mode != Mode::S3) break;
            return p.g * std::cos(s.psi) + (p.R_i + p.R_b) * s.psi_dot * s.psi_dot;
    }
    throw std::invalid_argument(std::string("guard_value: guard ") + to_string(which) +
                                " is not admissible in mode " + to_string(s.mode));
}

std::vector<GuardId> admissible_guards(Mode mode) {
    switch (mode) {
        case Mode::S1: return {GuardId::G1};
        case Mode::S2: return {GuardId::G2, GuardId::G3};
        case Mode::S3: return {GuardId::G4};
    }
    return {};
}

static void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

HybridState reset_s1_to_s2(const HybridState& s, const PlantParams& p) {
    require(s.mode == Mode::S1, "reset_s1_to_s2: source mode must be S1");
    require(guard_value(s, p, GuardId::G1) >= -1e-9, "reset_s1_to_s2: guard g1 not armed");
    HybridState out = s;
    out.mode = Mode::S2;
    out.r = p.R_o - p.R_b;
    out.r_dot = 0.0;
    out.phi = (s.theta - s.psi) * p.R_o / p.R_b;
    out.phi_dot = ((p.R_o + p.R_b) / p.R_b) * s.theta_dot - (p.R_o / p.R_b) * s.psi_dot;
    return out;
}

HybridState reset_s2_to_s1(const HybridState& s, const PlantParams& p) {
    require(s.mode == Mode::S2, "reset_s2_to_s1: source mode must be S2");
    require(guard_value(s, p, GuardId::G2) >= -1e-9, "reset_s2_to_s1: guard g2 not armed");
    HybridState out = s;
    out.mode = Mode::S1;
    const double psi_dot_rot = s.theta_dot - (p.R_b / p.R_o) * s.phi_dot;
    out.psi_dot = s.psi_dot + psi_dot_rot;
    out.canonicalize(p);
    return out;
}

HybridState reset_s2_to_s3(const HybridState& s, const PlantParams& p) {
    require(s.mode == Mode::S2, "reset_s2_to_s3: source mode must be S2");
    require(guard_value(s, p, GuardId::G3) >= -1e-9, "reset_s2_to_s3: guard g3 not armed");
    HybridState out = s;
    out.mode = Mode::S3;
    const double psi_dot_rot = s.theta_dot + (p.R_b / p.R_i) * s.phi_dot;
    out.psi_dot = s.psi_dot + psi_dot_rot;
    out.canonicalize(p);
    return out;
}

HybridState reset_s3_to_s2(const HybridState& s, const PlantParams& p) {
    require(s.mode == Mode::S3, "reset_s3_to_s2: source mode must be S3");
    require(guard_value(s, p, GuardId::G4) >= -1e-9, "reset_s3_to_s2: guard g4 not armed");
    HybridState out = s;
    out.mode = Mode::S2;
    out.r = p.R_i + p.R_b;
    out.r_dot = 0.0;
    out.phi = -(s.theta - s.psi) * p.R_i / p.R_b;
    out.phi_dot = -(((p.R_i - p.R_b) / p.R_b) * s.theta_dot - (p.R_i / p.R_b) * s.psi_dot);
    return out;
}

HybridState apply_reset(const HybridState& s, const PlantParams& p, GuardId which) {
    switch (which) {
        case GuardId::G1: return reset_s1_to_s2(s, p);
        case GuardId::G2: return reset_s2_to_s1(s, p);
        case GuardId::G3: return reset_s2_to_s3(s, p);
        case GuardId::G4: return reset_s3_to_s2(s, p);
    }
    throw std::invalid_argument("apply_reset: unknown guard");
}

void SimOptions::validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("SimOptions: step must be > 0");
    if (!(event_tol > 0.0 && event_tol < step)) {
        throw std::invalid_argument("SimOptions: event_tol must be in (0, step)");
    }
    if (max_events < 1) throw std::invalid_argument("SimOptions: max_events must be >= 1");
    if (!(t_end > 0.0)) throw std::invalid_argument("SimOptions: t_end must be > 0");
}

namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;

Vec8 pack(const HybridState& s) {
    Vec8 v;
    v << s.theta, s.theta_dot, s.psi, s.psi_dot, s.r, s.r_dot, s.phi, s.phi_dot;
    return v;
}

HybridState unpack(Mode mode, const Vec8& v, const PlantParams& p) {
    HybridState s;
    s.mode = mode;
    s.theta = v[0];
    s.theta_dot = v[1];
    s.psi = v[2];
    s.psi_dot = v[3];
    s.r = v[4];
    s.r_dot = v[5];
    s.phi = v[6];
    s.phi_dot = v[7];
    s.canonicalize(p);
    return s;
}

struct ModeDynamics {
    const PlantParams& p;
    const SimOptions& opts;
    RollCoeffs outer;
    RollCoeffs inner;

    ModeDynamics(const PlantParams& params, const SimOptions& o)
        : p(params), opts(o), outer(outer_coeffs(params)), inner(inner_coeffs(params)) {}

    Vec8 deriv(Mode mode, const Vec8& v, double u) const {
        Vec8 dv = Vec8::Zero();
        if (mode == Mode::S2) {
            FreeFallState x{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
            const double u_eff = opts.s2_input_active ? u : 0.0;
            const FreeFallState dx = f_s2_polar(x, u_eff, p, opts.r_min);
            dv << dx.theta, dx.theta_dot, dx.psi, dx.psi_dot, dx.r, dx.r_dot, dx.phi, dx.phi_dot;
        } else {
            const RollState x{v[0], v[1], v[2], v[3]};
            const RollState dx = (mode == Mode::S1) ? f_s1(x, u, outer) : f_s3(x, u, inner);
            dv[0] = dx.theta;
            dv[1] = dx.theta_dot;
            dv[2] = dx.psi;
            dv[3] = dx.psi_dot;
            // r, r_dot pinned; phi, phi_dot re-derived on unpack.
        }
        return dv;
    }

    // One classical RK4 step of size h; the controller is sampled at the
    // stage times and states.
    Vec8 rk4_step(Mode mode, const Vec8& v, double t, double h, const Controller& ctrl) const {
        const auto u_at = [&](double tt, const Vec8& vv) {
            return ctrl(tt, unpack(mode, vv, p));
        };
        const Vec8 k1 = deriv(mode, v, u_at(t, v));
        const Vec8 v2 = v + 0.5 * h * k1;
        const Vec8 k2 = deriv(mode, v2, u_at(t + 0.5 * h, v2));
        const Vec8 v3 = v + 0.5 * h * k2;
        const Vec8 k3 = deriv(mode, v3, u_at(t + 0.5 * h, v3));
        const Vec8 v4 = v + h * k3;
        const Vec8 k4 = deriv(mode, v4, u_at(t + h, v4));
        return v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
};

}  // namespace

SimTrace simulate(const HybridState& x0, const Controller& controller, const PlantParams& p,
                  const SimOptions& opts) {
    opts.validate();
    p.validate();

    const ModeDynamics dyn(p, opts);
    SimTrace trace;

    HybridState cur = x0;
    cur.canonicalize(p);
    double t = 0.0;
    int events = 0;

    const auto record = [&](double tt, const HybridState& s) {
        const double u = controller(tt, s);
        if (!trace.samples.empty() && trace.samples.back().t == tt) {
            trace.samples.back() = {tt, s, u};
        } else {
            trace.samples.push_back({tt, s, u});
        }
    };

    const auto fire = [&](GuardId gid, double tt, const HybridState& pre) {
        if (++events > opts.max_events) {
            throw SimulationError("simulate: max_events exceeded at t = " + std::to_string(tt));
        }
        HybridState post = apply_reset(pre, p, gid);
        trace.events.push_back({tt, gid, pre, post});
        cur = post;
        record(tt, post);
    };

    // Initial-condition guards may already be armed (and a reset can land on
    // an armed guard); resolve them before flowing.
    const auto fire_immediate = [&]() {
        bool fired = true;
        while (fired) {
            fired = false;
            for (GuardId gid : admissible_guards(cur.mode)) {
                if (guard_value(cur, p, gid) > 0.0) {
                    fire(gid, t, cur);
                    fired = true;
                    break;
                }
            }
        }
    };

    record(t, cur);
    fire_immediate();

    while (t < opts.t_end - 1e-15) {
        const double h = std::min(opts.step, opts.t_end - t);
        const Vec8 v0 = pack(cur);
        const Vec8 v1 = dyn.rk4_step(cur.mode, v0, t, h, controller);
        HybridState next = unpack(cur.mode, v1, p);
        if (!next.all_finite()) {
            throw SimulationError("simulate: nonfinite state at t = " + std::to_string(t + h));
        }

        // Find the earliest guard crossing within the step, if any.
        GuardId hit{};
        bool any_hit = false;
        double tau_hit = h;
        for (GuardId gid : admissible_guards(cur.mode)) {
            if (!(guard_value(next, p, gid) > 0.0)) continue;
            // Bisection on the partial-step length; g(0) <= 0 < g(hi).
            double lo = 0.0, hi = h;
            for (int it = 0; it < 90; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const Vec8 vm = dyn.rk4_step(cur.mode, v0, t, mid, controller);
                const HybridState sm = unpack(cur.mode, vm, p);
                if (guard_value(sm, p, gid) > 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            if (!any_hit || hi < tau_hit) {
                any_hit = true;
                tau_hit = hi;
                hit = gid;
            }
        }

        if (any_hit) {
            const Vec8 ve = dyn.rk4_step(cur.mode, v0, t, tau_hit, controller);
            HybridState pre = unpack(cur.mode, ve, p);
            t += tau_hit;
            fire(hit, t, pre);
            fire_immediate();
        } else {
            t += h;
            cur = next;
            record(t, cur);
        }
    }

    return trace;
}

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_state_fields(std::ofstream& out, const HybridState& s) {
    out << g17(s.theta) << ',' << g17(s.theta_dot) << ',' << g17(s.psi) << ','
        << g17(s.psi_dot) << ',' << g17(s.r) << ',' << g17(s.r_dot) << ',' << g17(s.phi) << ','
        << g17(s.phi_dot);
}

}  // namespace

void SimTrace::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("SimTrace: cannot write '" + path + "'");
    out << "t,mode,theta,theta_dot,psi,psi_dot,r,r_dot,phi,phi_dot,u\n";
    for (const auto& s : samples) {
        out << g17(s.t) << ',' << to_string(s.state.mode) << ',';
        write_state_fields(out, s.state);
        out << ',' << g17(s.u) << '\n';
    }
}

void SimTrace::save_events_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("SimTrace: cannot write '" + path + "'");
    out << "t,guard";
    for (const char* pfx : {"pre", "post"}) {
        for (const char* f : {"theta", "theta_dot", "psi", "psi_dot", "r", "r_dot", "phi",
                              "phi_dot"}) {
            out << ',' << pfx << '_' << f;
        }
    }
    out << '\n';
    for (const auto& e : events) {
        out << g17(e.t) << ',' << to_string(e.guard) << ',';
        write_state_fields(out, e.pre);
        out << ',';
        write_state_fields(out, e.post);
        out << '\n';
    }
}

}  // namespace dhoop
