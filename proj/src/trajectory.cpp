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

#include "dhoop/trajectory.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dhoop/ini.hpp"

namespace dhoop {

namespace {

// Locates the knot interval containing t and the interpolation weight.
struct Bracket {
    int k;
    double w;
};

Bracket bracket(const std::vector<double>& times, double t) {
    const int n = static_cast<int>(times.size());
    if (n < 2) return {0, 0.0};
    const double tc = std::clamp(t, times.front(), times.back());
    auto it = std::upper_bound(times.begin(), times.end(), tc);
    int k = static_cast<int>(it - times.begin()) - 1;
    k = std::clamp(k, 0, n - 2);
    const double dt = times[k + 1] - times[k];
    const double w = dt > 0.0 ? (tc - times[k]) / dt : 0.0;
    return {k, w};
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RollState Trajectory::state_at(double t) const {
    const auto [k, w] = bracket(times, t);
    const RollState& a = states[k];
    const RollState& b = states[k + 1];
    return {a.theta + w * (b.theta - a.theta), a.theta_dot + w * (b.theta_dot - a.theta_dot),
            a.psi + w * (b.psi - a.psi), a.psi_dot + w * (b.psi_dot - a.psi_dot)};
}

double Trajectory::input_at(double t) const {
    const auto [k, w] = bracket(times, t);
    return inputs[k] + w * (inputs[k + 1] - inputs[k]);
}

Trajectory Trajectory::resampled(int M) const {
    Trajectory out = zeros(T_f, M);
    out.u_max = u_max;
    out.objective = objective;
    out.constraint_violation = constraint_violation;
    for (int k = 0; k < M; ++k) {
        out.states[k] = state_at(out.times[k]);
        out.inputs[k] = input_at(out.times[k]);
    }
    return out;
}

Trajectory Trajectory::zeros(double T_f, int N) {
    if (N < 2) throw std::invalid_argument("Trajectory: need at least 2 knots");
    Trajectory t;
    t.T_f = T_f;
    t.times.resize(N);
    t.states.resize(N);
    t.inputs.assign(N, 0.0);
    for (int k = 0; k < N; ++k) t.times[k] = T_f * k / (N - 1);
    return t;
}

void Trajectory::save_csv(const std::string& csv_path, const std::string& meta_path) const {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("Trajectory: cannot write '" + csv_path + "'");
    out << "t,theta,theta_dot,psi,psi_dot,u\n";
    for (int k = 0; k < knot_count(); ++k) {
        const RollState& x = states[k];
        out << g17(times[k]) << ',' << g17(x.theta) << ',' << g17(x.theta_dot) << ','
            << g17(x.psi) << ',' << g17(x.psi_dot) << ',' << g17(inputs[k]) << '\n';
    }

    IniFile meta;
    meta.set_double("trajectory", "T_f", T_f);
    meta.set("trajectory", "N", std::to_string(knot_count()));
    meta.set_double("trajectory", "u_max", u_max);
    meta.set_double("trajectory", "objective", objective);
    meta.set_double("trajectory", "constraint_violation", constraint_violation);
    meta.save(meta_path);
}

Trajectory Trajectory::load_csv(const std::string& csv_path, const std::string& meta_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("Trajectory: cannot open '" + csv_path + "'");
    Trajectory t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("Trajectory: empty file " + csv_path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        double vals[6];
        for (double& val : vals) {
            if (!std::getline(ls, cell, ',')) {
                throw std::runtime_error("Trajectory: short row in " + csv_path);
            }
            val = std::stod(cell);
        }
        t.times.push_back(vals[0]);
        t.states.push_back({vals[1], vals[2], vals[3], vals[4]});
        t.inputs.push_back(vals[5]);
    }
    if (t.knot_count() < 2) throw std::runtime_error("Trajectory: too few knots in " + csv_path);
    t.T_f = t.times.back();

    const IniFile meta = IniFile::load(meta_path);
    if (auto v = meta.get_double("trajectory", "T_f")) t.T_f = *v;
    if (auto v = meta.get_double("trajectory", "u_max")) t.u_max = *v;
    if (auto v = meta.get_double("trajectory", "objective")) t.objective = *v;
    if (auto v = meta.get_double("trajectory", "constraint_violation")) {
        t.constraint_violation = *v;
    }
    return t;
}

}  // namespace dhoop
