#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rankprop/errors.hpp"
#include "rankprop/response_matrix.hpp"

namespace rankprop {

struct PropagationConfig {
    double alpha = 0.85;
    double epsilon = 1e-10;
    std::size_t max_iterations = 1000;

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw ValueOutOfRange("alpha must lie in (0,1)");
        if (!(epsilon > 0.0))
            throw ValueOutOfRange("epsilon must be positive");
        if (max_iterations < 1)
            throw ValueOutOfRange("max_iterations must be at least 1");
    }
};

struct StationaryScores {
    std::vector<double> pi_q;  // difficulty mass per retained question
    std::vector<double> pi_m;  // competency mass per model
};

struct ConvergenceTrace {
    // deltas[t] is the L1 change of sweep t; index 0 is the move away from
    // the uniform start ("iteration 0" in reporting).
    std::vector<double> deltas;
    std::size_t iterations = 0;
    bool converged = false;  // false = max_iterations hit; scores still usable
    std::vector<double> per_iteration_seconds;
};

namespace detail {

// One damped sweep, Gauss-Seidel order: the model update sees the fresh
// question vector. Accumulation order is fixed (ascending question index,
// then storage order of entries) so results reproduce bit-for-bit.
inline void sweep(const TransitionSystem& ts, double alpha,
                  const std::vector<double>& pi_m_in, std::vector<double>& pi_q_out,
                  std::vector<double>& pi_m_out, const std::vector<double>& inv_f) {
    const std::size_t Q = ts.q_count, M = ts.m_count;
    const double tele_q = (1.0 - alpha) / static_cast<double>(Q);
    const double tele_m = (1.0 - alpha) / static_cast<double>(M);

    double dangling_mass = 0.0;
    for (std::size_t j = 0; j < M; ++j)
        if (ts.dangling[j]) dangling_mass += pi_m_in[j];
    dangling_mass /= static_cast<double>(Q);

    if (ts.is_binary) {
        for (std::size_t q = 0; q < Q; ++q) {
            double acc = dangling_mass;
            for (std::size_t e = ts.pmq_t_offsets[q]; e < ts.pmq_t_offsets[q + 1]; ++e)
                acc += pi_m_in[ts.pmq_t_cols[e]] * inv_f[ts.pmq_t_cols[e]];
            pi_q_out[q] = alpha * acc + tele_q;
        }
        for (std::size_t j = 0; j < M; ++j) pi_m_out[j] = 0.0;
        for (std::size_t q = 0; q < Q; ++q) {
            const double w = pi_q_out[q] / ts.solver_totals[q];
            for (std::size_t e = ts.pqm_offsets[q]; e < ts.pqm_offsets[q + 1]; ++e)
                pi_m_out[ts.pqm_cols[e]] += w;
        }
    } else {
        for (std::size_t q = 0; q < Q; ++q) {
            double acc = dangling_mass;
            for (std::size_t e = ts.pmq_t_offsets[q]; e < ts.pmq_t_offsets[q + 1]; ++e)
                acc += pi_m_in[ts.pmq_t_cols[e]] * ts.pmq_t_vals[e];
            pi_q_out[q] = alpha * acc + tele_q;
        }
        for (std::size_t j = 0; j < M; ++j) pi_m_out[j] = 0.0;
        for (std::size_t q = 0; q < Q; ++q) {
            const double wq = pi_q_out[q];
            for (std::size_t e = ts.pqm_offsets[q]; e < ts.pqm_offsets[q + 1]; ++e)
                pi_m_out[ts.pqm_cols[e]] += wq * ts.pqm_vals[e];
        }
    }
    for (std::size_t j = 0; j < M; ++j) pi_m_out[j] = alpha * pi_m_out[j] + tele_m;
}

}  // namespace detail

// Damped bidirectional propagation to the stationary pair (pi_q, pi_m).
// Starts uniform, stops when the combined L1 delta drops below epsilon.
// A non-converged run returns converged=false rather than throwing; the
// scores are the last iterate.
inline std::pair<StationaryScores, ConvergenceTrace> propagate(const TransitionSystem& ts,
                                                               const PropagationConfig& cfg) {
    cfg.validate();
    const std::size_t Q = ts.q_count, M = ts.m_count;
    StationaryScores s;
    s.pi_q.assign(Q, 1.0 / static_cast<double>(Q));
    s.pi_m.assign(M, 1.0 / static_cast<double>(M));
    std::vector<double> next_q(Q), next_m(M);
    std::vector<double> inv_f(M, 0.0);
    for (std::size_t j = 0; j < M; ++j)
        if (!ts.dangling[j]) inv_f[j] = 1.0 / ts.failure_totals[j];

    ConvergenceTrace tr;
    using clock = std::chrono::steady_clock;
    for (std::size_t t = 0; t < cfg.max_iterations; ++t) {
        const auto t0 = clock::now();
        detail::sweep(ts, cfg.alpha, s.pi_m, next_q, next_m, inv_f);
        double delta = 0.0;
        for (std::size_t q = 0; q < Q; ++q) delta += std::abs(next_q[q] - s.pi_q[q]);
        for (std::size_t j = 0; j < M; ++j) delta += std::abs(next_m[j] - s.pi_m[j]);
        s.pi_q.swap(next_q);
        s.pi_m.swap(next_m);
        tr.deltas.push_back(delta);
        tr.per_iteration_seconds.push_back(
            std::chrono::duration<double>(clock::now() - t0).count());
        if (delta < cfg.epsilon) {
            tr.converged = true;
            break;
        }
    }
    tr.iterations = tr.deltas.size();
    return {std::move(s), std::move(tr)};
}

// L-infinity residuals of the two stationary equations at the given scores.
inline std::pair<double, double> residual(const TransitionSystem& ts, const StationaryScores& s,
                                          double alpha) {
    const std::size_t Q = ts.q_count, M = ts.m_count;
    if (s.pi_q.size() != Q || s.pi_m.size() != M)
        throw DimensionMismatch("score vectors do not match the transition system");
    std::vector<double> eq_q(Q), eq_m(M);
    std::vector<double> inv_f(M, 0.0);
    for (std::size_t j = 0; j < M; ++j)
        if (!ts.dangling[j]) inv_f[j] = 1.0 / ts.failure_totals[j];
    const double tele_q = (1.0 - alpha) / static_cast<double>(Q);
    const double tele_m = (1.0 - alpha) / static_cast<double>(M);

    double dangling_mass = 0.0;
    for (std::size_t j = 0; j < M; ++j)
        if (ts.dangling[j]) dangling_mass += s.pi_m[j];
    dangling_mass /= static_cast<double>(Q);

    for (std::size_t q = 0; q < Q; ++q) {
        double acc = dangling_mass;
        for (std::size_t e = ts.pmq_t_offsets[q]; e < ts.pmq_t_offsets[q + 1]; ++e)
            acc += ts.is_binary ? s.pi_m[ts.pmq_t_cols[e]] * inv_f[ts.pmq_t_cols[e]]
                                : s.pi_m[ts.pmq_t_cols[e]] * ts.pmq_t_vals[e];
        eq_q[q] = alpha * acc + tele_q;
    }
    for (std::size_t j = 0; j < M; ++j) eq_m[j] = 0.0;
    for (std::size_t q = 0; q < Q; ++q) {
        if (ts.is_binary) {
            const double w = s.pi_q[q] / ts.solver_totals[q];
            for (std::size_t e = ts.pqm_offsets[q]; e < ts.pqm_offsets[q + 1]; ++e)
                eq_m[ts.pqm_cols[e]] += w;
        } else {
            for (std::size_t e = ts.pqm_offsets[q]; e < ts.pqm_offsets[q + 1]; ++e)
                eq_m[ts.pqm_cols[e]] += s.pi_q[q] * ts.pqm_vals[e];
        }
    }
    double rq = 0.0, rm = 0.0;
    for (std::size_t q = 0; q < Q; ++q) rq = std::max(rq, std::abs(s.pi_q[q] - eq_q[q]));
    for (std::size_t j = 0; j < M; ++j)
        rm = std::max(rm, std::abs(s.pi_m[j] - (alpha * eq_m[j] + tele_m)));
    return {rq, rm};
}

// One full filter -> transitions -> propagate pass over a raw matrix.
struct PropagationRun {
    FilterReport filter;
    TransitionSystem ts;
    StationaryScores scores;
    ConvergenceTrace trace;
};

inline PropagationRun run_propagation(const ResponseMatrix& m, const PropagationConfig& cfg) {
    PropagationRun run;
    auto [kept, fr] = filter_extremes(m);
    run.filter = std::move(fr);
    run.ts = build_transitions(kept);
    auto [scores, trace] = propagate(run.ts, cfg);
    run.scores = std::move(scores);
    run.trace = std::move(trace);
    return run;
}

struct SweepRow {
    double alpha = 0.0;
    std::size_t iteration = 0;  // 0-based, matching the delta trace
    double delta = 0.0;
    bool converged_here = false;
};

// Reruns propagation per alpha and flattens the delta traces into the
// (alpha, iteration, delta) table layout.
inline std::vector<SweepRow> convergence_sweep(const TransitionSystem& ts,
                                               const std::vector<double>& alphas, double epsilon,
                                               std::size_t max_iterations = 1000) {
    std::vector<SweepRow> rows;
    for (double a : alphas) {
        PropagationConfig cfg;
        cfg.alpha = a;
        cfg.epsilon = epsilon;
        cfg.max_iterations = max_iterations;
        auto [scores, tr] = propagate(ts, cfg);
        for (std::size_t t = 0; t < tr.deltas.size(); ++t)
            rows.push_back({a, t, tr.deltas[t], tr.converged && t + 1 == tr.deltas.size()});
    }
    return rows;
}

}  // namespace rankprop
