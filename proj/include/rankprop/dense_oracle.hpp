#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rankprop/errors.hpp"
#include "rankprop/response_matrix.hpp"

namespace rankprop {

struct OracleSolution {
    std::vector<double> pi;           // stationary vector, questions then models
    std::size_t block_matrix_dim = 0; // Q' + M

    std::vector<double> question_block_normalized(std::size_t q_count) const {
        std::vector<double> out(pi.begin(), pi.begin() + q_count);
        double s = 0.0;
        for (double v : out) s += v;
        for (double& v : out) v /= s;
        return out;
    }
    std::vector<double> model_block_normalized(std::size_t q_count) const {
        std::vector<double> out(pi.begin() + q_count, pi.end());
        double s = 0.0;
        for (double v : out) s += v;
        for (double& v : out) v /= s;
        return out;
    }
};

// Independent fixed-point route for small systems: assembles the dense
// damped chain over the Q'+M augmented state space and solves the linear
// system directly. The teleportation vector puts half its mass on each
// block, so the solution sums to 1 and each block, renormalized, equals
// the limit of the alternating update.
inline OracleSolution solve_dense_oracle(const TransitionSystem& ts, double alpha) {
    const std::size_t Q = ts.q_count, M = ts.m_count, n = Q + M;
    if (n > 2000)
        throw TooLargeForDenseOracle("dense oracle limited to Q'+M <= 2000, got " +
                                     std::to_string(n));
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValueOutOfRange("alpha must lie in (0,1)");

    // Row-stochastic P over augmented states: questions 0..Q'-1, models after.
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t q = 0; q < Q; ++q)
        for (std::size_t e = ts.pqm_offsets[q]; e < ts.pqm_offsets[q + 1]; ++e) {
            const std::size_t j = ts.pqm_cols[e];
            P(q, Q + j) = ts.is_binary ? 1.0 / ts.solver_totals[q] : ts.pqm_vals[e];
        }
    for (std::size_t q = 0; q < Q; ++q)
        for (std::size_t e = ts.pmq_t_offsets[q]; e < ts.pmq_t_offsets[q + 1]; ++e) {
            const std::size_t j = ts.pmq_t_cols[e];
            P(Q + j, q) = ts.is_binary ? 1.0 / ts.failure_totals[j] : ts.pmq_t_vals[e];
        }
    for (std::size_t j = 0; j < M; ++j)
        if (ts.dangling[j])
            for (std::size_t q = 0; q < Q; ++q)
                P(Q + j, q) = 1.0 / static_cast<double>(Q);

    Eigen::VectorXd v(n);
    for (std::size_t q = 0; q < Q; ++q) v(q) = 0.5 / static_cast<double>(Q);
    for (std::size_t j = 0; j < M; ++j) v(Q + j) = 0.5 / static_cast<double>(M);

    // pi = alpha P^T pi + (1-alpha) v  with sum(v)=1 forces sum(pi)=1.
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - alpha * P.transpose();
    Eigen::VectorXd pi = A.partialPivLu().solve((1.0 - alpha) * v);

    OracleSolution sol;
    sol.block_matrix_dim = n;
    sol.pi.assign(pi.data(), pi.data() + n);
    return sol;
}

}  // namespace rankprop
