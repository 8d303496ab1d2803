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

#include "dhoop/control.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dhoop {

LinearizationPoint linearize(const RollCoeffs& c, const RollState& x_ref, double u_ref) {
    LinearizationPoint lp;
    lp.x_ref = x_ref;
    lp.u_ref = u_ref;
    lp.A(0, 1) = 1.0;
    lp.A(2, 3) = 1.0;
    lp.A(3, 1) = -c.d_bar / c.a_bar;
    lp.A(3, 2) = -c.c_bar * std::cos(x_ref.psi) / c.a_bar;
    lp.A(3, 3) = -c.b_bar / c.a_bar;
    lp.B(1) = 1.0;
    lp.B(3) = c.e_bar / c.a_bar;
    return lp;
}

void LqrWeights::validate() const {
    if (!(R > 0.0)) throw std::invalid_argument("LqrWeights: R must be > 0");
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("LqrWeights: Q must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(Q);
    if (es.eigenvalues().minCoeff() < -1e-12) {
        throw std::invalid_argument("LqrWeights: Q must be positive semidefinite");
    }
}

namespace {

Eigen::Matrix4d riccati_rhs(const Eigen::Matrix4d& S, const Eigen::Matrix4d& A,
                            const Eigen::Vector4d& B, const Eigen::Matrix4d& Q, double R) {
    // Value of -Sdot.
    return S * A + A.transpose() * S - S * B * (1.0 / R) * B.transpose() * S + Q;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

GainSchedule integrate_dre(const SystemFn& sys, const LqrWeights& w, double T_f,
                           const std::vector<double>& store_times, double step) {
    w.validate();
    if (store_times.empty() || std::abs(store_times.back() - T_f) > 1e-12) {
        throw std::invalid_argument("integrate_dre: store_times must end at T_f");
    }

    GainSchedule out;
    out.times = store_times;
    const int n = static_cast<int>(store_times.size());
    out.S.resize(n);
    out.K.resize(n);

    Eigen::Matrix4d A;
    Eigen::Vector4d B;
    Eigen::Matrix4d S = w.Q;

    const auto store = [&](int idx) {
        sys(store_times[idx], A, B);
        out.S[idx] = S;
        out.K[idx] = (1.0 / w.R) * B.transpose() * S;
    };
    store(n - 1);

    // March backward segment by segment so that every store time is hit
    // exactly; each RK4 stage re-evaluates A(t), B(t).
    for (int idx = n - 1; idx > 0; --idx) {
        const double t_hi = store_times[idx];
        const double t_lo = store_times[idx - 1];
        const double span = t_hi - t_lo;
        if (!(span > 0.0)) throw std::invalid_argument("integrate_dre: times must be ascending");
        const int substeps = std::max(1, static_cast<int>(std::ceil(span / step)));
        const double dt = span / substeps;
        double t = t_hi;
        for (int i = 0; i < substeps; ++i) {
            const auto f = [&](double tt, const Eigen::Matrix4d& Sv) {
                sys(tt, A, B);
                return riccati_rhs(Sv, A, B, w.Q, w.R);  // equals -dS/dt
            };
            const Eigen::Matrix4d k1 = f(t, S);
            const Eigen::Matrix4d k2 = f(t - 0.5 * dt, S + 0.5 * dt * k1);
            const Eigen::Matrix4d k3 = f(t - 0.5 * dt, S + 0.5 * dt * k2);
            const Eigen::Matrix4d k4 = f(t - dt, S + dt * k3);
            S += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t -= dt;

            const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
            out.max_asymmetry = std::max(out.max_asymmetry, asym);
            S = 0.5 * (S + S.transpose());

            if (!S.allFinite() || S.cwiseAbs().maxCoeff() > 1e12) {
                throw RiccatiDivergence("integrate_dre: divergence at t = " + std::to_string(t));
            }
        }
        store(idx - 1);
    }
    return out;
}

GainSchedule riccati_backward(const Trajectory& traj, const LqrWeights& w, const RollCoeffs& c) {
    if (traj.knot_count() < 2) throw std::invalid_argument("riccati_backward: empty trajectory");
    const SystemFn sys = [&](double t, Eigen::Matrix4d& A, Eigen::Vector4d& B) {
        const LinearizationPoint lp = linearize(c, traj.state_at(t), traj.input_at(t));
        A = lp.A;
        B = lp.B;
    };
    const double h = traj.T_f / (traj.knot_count() - 1);
    return integrate_dre(sys, w, traj.T_f, traj.times, std::min(1e-3, h / 10.0));
}

Eigen::RowVector4d stationary_lqr(const RollState& x_eq, const LqrWeights& w,
                                  const RollCoeffs& c) {
    w.validate();
    const LinearizationPoint lp = linearize(c, x_eq, 0.0);

    Eigen::Matrix4d S = w.Q;
    const double dt = 1e-3;
    const int max_steps = 2'000'000;
    for (int i = 0; i < max_steps; ++i) {
        const Eigen::Matrix4d dS = riccati_rhs(S, lp.A, lp.B, w.Q, w.R);  // backward derivative
        S += dt * dS;
        S = 0.5 * (S + S.transpose());
        if (!S.allFinite() || S.cwiseAbs().maxCoeff() > 1e12) {
            throw RiccatiDivergence("stationary_lqr: DRE diverged (not stabilizable?)");
        }
        const double rel = (dt * dS).cwiseAbs().maxCoeff() / std::max(1.0, S.cwiseAbs().maxCoeff());
        if (rel < 1e-10) {
            const Eigen::RowVector4d K = (1.0 / w.R) * lp.B.transpose() * S;
            const Eigen::Matrix4d Acl = lp.A - lp.B * K;
            if (spectral_abscissa(Acl) >= 0.0) {
                throw RiccatiDivergence("stationary_lqr: converged gain is not stabilizing");
            }
            return K;
        }
    }
    throw RiccatiDivergence("stationary_lqr: no steady state within iteration budget");
}

double spectral_abscissa(const Eigen::Matrix4d& M) {
    Eigen::EigenSolver<Eigen::Matrix4d> es(M);
    return es.eigenvalues().real().maxCoeff();
}

Eigen::RowVector4d GainSchedule::gain_at(double t) const {
    const int n = static_cast<int>(times.size());
    if (n == 0) throw std::runtime_error("GainSchedule: empty");
    if (n == 1) return K[0];
    const double tc = std::clamp(t, times.front(), times.back());
    auto it = std::upper_bound(times.begin(), times.end(), tc);
    int k = static_cast<int>(it - times.begin()) - 1;
    k = std::clamp(k, 0, n - 2);
    const double dt = times[k + 1] - times[k];
    const double wgt = dt > 0.0 ? (tc - times[k]) / dt : 0.0;
    return K[k] + wgt * (K[k + 1] - K[k]);
}

void GainSchedule::save_csv(const std::string& path, bool include_s) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("GainSchedule: cannot write '" + path + "'");
    out << "t,K1,K2,K3,K4";
    if (include_s) {
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) out << ",S" << i + 1 << j + 1;
        }
    }
    out << '\n';
    for (size_t k = 0; k < times.size(); ++k) {
        out << g17(times[k]);
        for (int j = 0; j < 4; ++j) out << ',' << g17(K[k](j));
        if (include_s) {
            for (int i = 0; i < 4; ++i) {
                for (int j = i; j < 4; ++j) out << ',' << g17(S[k](i, j));
            }
        }
        out << '\n';
    }
}

GainSchedule GainSchedule::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("GainSchedule: cannot open '" + path + "'");
    GainSchedule gs;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("GainSchedule: empty file " + path);
    const bool has_s = line.find(",S11") != std::string::npos;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() < 5) throw std::runtime_error("GainSchedule: short row in " + path);
        gs.times.push_back(vals[0]);
        gs.K.push_back(Eigen::RowVector4d(vals[1], vals[2], vals[3], vals[4]));
        Eigen::Matrix4d S = Eigen::Matrix4d::Zero();
        if (has_s && vals.size() >= 15) {
            int idx = 5;
            for (int i = 0; i < 4; ++i) {
                for (int j = i; j < 4; ++j) {
                    S(i, j) = vals[idx];
                    S(j, i) = vals[idx];
                    ++idx;
                }
            }
        }
        gs.S.push_back(S);
    }
    return gs;
}

ControlOutput control_law(double t, const RollState& x, const Trajectory& traj,
                          const GainSchedule& gains) {
    if (t < -1e-9 || t > traj.T_f + 1e-9) {
        throw std::out_of_range("control_law: t outside [0, T_f]");
    }
    const RollState xs = traj.state_at(t);
    const Eigen::Vector4d dx = x.vec() - xs.vec();

    ControlOutput out;
    out.feedforward = traj.input_at(t);
    out.feedback = -(gains.gain_at(t) * dx)(0);
    const double raw = out.feedforward + out.feedback;
    const double lim = traj.u_max > 0.0 ? traj.u_max : std::abs(raw);
    out.u = std::clamp(raw, -lim, lim);
    out.saturated = raw != out.u;
    return out;
}

}  // namespace dhoop
