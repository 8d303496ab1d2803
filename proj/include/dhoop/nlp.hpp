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

#ifndef DHOOP_NLP_HPP
#define DHOOP_NLP_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace dhoop {

/**
 * @brief Smooth NLP
 *   min f(z)  s.t.  h(z) = 0,  g(z) <= 0
 * with analytic gradients supplied as transposed-Jacobian products.
 */
struct NlpProblem {
    int num_vars = 0;
    int num_eq = 0;
    int num_ineq = 0;

    std::function<double(const Eigen::VectorXd&)> objective;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> objective_grad;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eq;    ///< h(z), size num_eq
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> ineq;  ///< g(z), size num_ineq

    /// Returns Jh(z)^T y (y sized num_eq).
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> eq_jtv;
    /// Returns Jg(z)^T y (y sized num_ineq).
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> ineq_jtv;
};

struct NlpOptions {
    double tol_feas = 1e-8;   ///< stop when max violation falls below this
    double tol_grad = 1e-6;   ///< final inner first-order tolerance (scaled)
    double mu0 = 10.0;
    double mu_growth = 10.0;
    double mu_max = 1e9;
    int max_outer = 60;
    int max_inner = 4000;
    int lbfgs_memory = 12;
    bool verbose = false;
};

struct NlpReport {
    bool converged = false;
    double objective = 0.0;
    double max_violation = 0.0;  ///< max over |h| and max(0, g)
    double grad_norm = 0.0;      ///< inf-norm of the augmented-Lagrangian gradient
    int outer_iters = 0;
    long inner_iters = 0;
    std::string message;
};

/**
 * @brief Augmented-Lagrangian (PHR) loop around an L-BFGS inner solve.
 *
 * z holds the initial iterate on entry and the best iterate on exit; when the
 * report says not converged, z is still the best point found and
 * max_violation measures how infeasible it is.
 */
NlpReport solve_auglag(const NlpProblem& p, Eigen::VectorXd& z, const NlpOptions& opts = {});

}  // namespace dhoop

#endif  // DHOOP_NLP_HPP
