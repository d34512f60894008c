#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rankprop/errors.hpp"
#include "rankprop/response_matrix.hpp"
#include "rankprop/scoring.hpp"

namespace rankprop {

// Per-model mean value over all questions, filtered or not.
inline std::vector<double> accuracy_scores(const ResponseMatrix& m) {
    const std::size_t Q = m.question_ids.size(), M = m.model_ids.size();
    if (Q == 0 || M == 0) throw DimensionMismatch("accuracy needs a non-empty matrix");
    std::vector<double> acc(M, 0.0);
    for (std::size_t q = 0; q < Q; ++q)
        for (std::size_t j = 0; j < M; ++j) acc[j] += m.at(q, j);
    for (double& a : acc) a /= static_cast<double>(Q);
    return acc;
}

// Per-question failure count: the number of models that missed the question.
// Binary input only; graded credit has no count interpretation.
inline std::vector<double> simple_rank_difficulty(const ResponseMatrix& m) {
    if (!m.is_binary) throw NonBinaryInput("simple rank requires a binary matrix");
    const std::size_t Q = m.question_ids.size(), M = m.model_ids.size();
    std::vector<double> out(Q, 0.0);
    for (std::size_t q = 0; q < Q; ++q) {
        double s = 0.0;
        for (std::size_t j = 0; j < M; ++j) s += m.at(q, j);
        out[q] = static_cast<double>(M) - s;
    }
    return out;
}

// Dataset-weighted accuracy: each dataset d gets weight w_d = 1 - (mean
// accuracy of all models on d), and a model's score is the w-weighted mean
// of its per-dataset accuracies. Harder datasets count for more.
inline std::vector<double> weighted_scores(const ResponseMatrix& m) {
    if (m.dataset_tags.empty()) throw MissingTags("weighted accuracy requires dataset tags");
    const std::size_t Q = m.question_ids.size(), M = m.model_ids.size();
    std::map<std::string, std::vector<std::size_t>> by_dataset;
    for (std::size_t q = 0; q < Q; ++q) by_dataset[m.dataset_tags[q]].push_back(q);

    double weight_total = 0.0;
    std::vector<double> out(M, 0.0);
    std::vector<double> acc(M);
    for (const auto& [tag, rows] : by_dataset) {
        double sum_all = 0.0;
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t q : rows)
            for (std::size_t j = 0; j < M; ++j) {
                acc[j] += m.at(q, j);
                sum_all += m.at(q, j);
            }
        const double denom = static_cast<double>(rows.size());
        const double w = 1.0 - sum_all / (denom * static_cast<double>(M));
        weight_total += w;
        for (std::size_t j = 0; j < M; ++j) out[j] += w * (acc[j] / denom);
    }
    if (weight_total == 0.0)
        throw ZeroTotalWeight("all datasets have perfect accuracy; weights vanish");
    for (double& v : out) v /= weight_total;
    return out;
}

enum class IrtKind { OnePL, TwoPL };

struct IRTConfig {
    IrtKind kind = IrtKind::OnePL;
    std::size_t max_optimizer_iterations = 1000;
    double l2_coefficient = 0.01;
    double ability_min = -5.0, ability_max = 5.0;
    double difficulty_min = -5.0, difficulty_max = 5.0;
    double discrimination_min = 0.1, discrimination_max = 5.0;
};

struct IRTFit {
    std::vector<double> abilities;        // theta, per model
    std::vector<double> difficulties;     // beta, per question
    std::vector<double> discriminations;  // a, per question; all 1 for OnePL
    double final_objective = 0.0;
    bool converged = false;
};

namespace detail {

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(sigma(z)) and log(1 - sigma(z)) without underflow at |z| ~ 50.
inline void log_sigmoid_pair(double z, double& logp, double& log1mp) {
    if (z >= 0.0) {
        const double t = std::log1p(std::exp(-z));
        logp = -t;
        log1mp = -z - t;
    } else {
        const double t = std::log1p(std::exp(z));
        logp = z - t;
        log1mp = -t;
    }
}

// FNV-1a, used to attach parameter jitter to ids rather than positions so
// that permuting rows or columns permutes the fit.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline double id_jitter(const std::string& id, std::uint64_t seed) {
    std::uint64_t x = fnv1a(id) ^ (seed + 0x9E3779B97F4A7C15ull);
    // splitmix64 finalizer
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    const double u = static_cast<double>(x >> 11) * 0x1.0p-53;
    return (2.0 * u - 1.0) * 1e-3;
}

}  // namespace detail

// Penalized maximum likelihood for the one- and two-parameter logistic
// models, P(correct) = sigma(a_q (theta_m - beta_q)). Projected gradient
// with a Barzilai-Borwein step and Armijo backtracking; parameters live in
// closed boxes and an L2 penalty pins the location/scale indeterminacy.
inline IRTFit fit_irt(const ResponseMatrix& m, const IRTConfig& cfg, std::uint64_t seed) {
    if (!m.is_binary) throw NonBinaryInput("IRT fitting requires a binary matrix");
    const std::size_t Q = m.question_ids.size(), M = m.model_ids.size();
    if (Q < 2 || M < 2) throw DimensionMismatch("IRT needs at least 2 questions and 2 models");
    const bool two_pl = cfg.kind == IrtKind::TwoPL;
    const double lam = cfg.l2_coefficient;
    const std::size_t n = M + Q + (two_pl ? Q : 0);

    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < M; ++j) x[j] = detail::id_jitter(m.model_ids[j], seed);
    for (std::size_t q = 0; q < Q; ++q)
        x[M + q] = detail::id_jitter(m.question_ids[q], seed ^ 0xA5A5A5A5A5A5A5A5ull);
    if (two_pl)
        for (std::size_t q = 0; q < Q; ++q) x[M + Q + q] = 1.0;

    auto project = [&](std::vector<double>& v) {
        for (std::size_t j = 0; j < M; ++j)
            v[j] = std::clamp(v[j], cfg.ability_min, cfg.ability_max);
        for (std::size_t q = 0; q < Q; ++q)
            v[M + q] = std::clamp(v[M + q], cfg.difficulty_min, cfg.difficulty_max);
        if (two_pl)
            for (std::size_t q = 0; q < Q; ++q)
                v[M + Q + q] = std::clamp(v[M + Q + q], cfg.discrimination_min,
                                          cfg.discrimination_max);
    };
    project(x);

    // value and gradient of the penalized negative log-likelihood
    auto eval = [&](const std::vector<double>& v, std::vector<double>* grad) {
        if (grad) std::fill(grad->begin(), grad->end(), 0.0);
        double f = 0.0;
        for (std::size_t q = 0; q < Q; ++q) {
            const double beta = v[M + q];
            const double a = two_pl ? v[M + Q + q] : 1.0;
            for (std::size_t j = 0; j < M; ++j) {
                const double z = a * (v[j] - beta);
                double logp, log1mp;
                detail::log_sigmoid_pair(z, logp, log1mp);
                const double y = m.at(q, j);
                f -= y * logp + (1.0 - y) * log1mp;
                if (grad) {
                    const double r = detail::sigmoid(z) - y;  // dNLL/dz
                    (*grad)[j] += r * a;
                    (*grad)[M + q] -= r * a;
                    if (two_pl) (*grad)[M + Q + q] += r * (v[j] - beta);
                }
            }
        }
        for (std::size_t j = 0; j < M; ++j) {
            f += lam * v[j] * v[j];
            if (grad) (*grad)[j] += 2.0 * lam * v[j];
        }
        for (std::size_t q = 0; q < Q; ++q) {
            f += lam * v[M + q] * v[M + q];
            if (grad) (*grad)[M + q] += 2.0 * lam * v[M + q];
        }
        if (two_pl)
            for (std::size_t q = 0; q < Q; ++q) {
                const double d = v[M + Q + q] - 1.0;
                f += lam * d * d;
                if (grad) (*grad)[M + Q + q] += 2.0 * lam * d;
            }
        return f;
    };

    std::vector<double> g(n), x_new(n), g_new(n);
    double f = eval(x, &g);
    if (!std::isfinite(f)) throw OptimizerDiverged("non-finite objective at initialization");

    double step = 1e-2;
    bool converged = false;
    for (std::size_t it = 0; it < cfg.max_optimizer_iterations && !converged; ++it) {
        double f_new = 0.0;
        bool accepted = false;
        double s = step;
        for (int bt = 0; bt < 40; ++bt) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] - s * g[i];
            project(x_new);
            f_new = eval(x_new, nullptr);
            double decrease = 0.0;
            for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (x[i] - x_new[i]);
            if (std::isfinite(f_new) && f_new <= f - 1e-4 * decrease) {
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break;  // no productive direction left at this scale
        eval(x_new, &g_new);

        double max_move = 0.0, sy = 0.0, yy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sx = x_new[i] - x[i];
            const double yg = g_new[i] - g[i];
            max_move = std::max(max_move, std::abs(sx));
            sy += sx * yg;
            yy += yg * yg;
        }
        x.swap(x_new);
        g.swap(g_new);
        f = f_new;
        if (!std::isfinite(f)) throw OptimizerDiverged("objective became non-finite");
        if (max_move < 1e-8) {
            converged = true;
            break;
        }
        step = yy > 0.0 ? std::clamp(sy / yy, 1e-7, 1e3) : std::min(step * 2.0, 1e3);
    }

    IRTFit fit;
    fit.abilities.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(M));
    fit.difficulties.assign(x.begin() + static_cast<std::ptrdiff_t>(M),
                            x.begin() + static_cast<std::ptrdiff_t>(M + Q));
    fit.discriminations = two_pl
                              ? std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(M + Q),
                                                    x.end())
                              : std::vector<double>(Q, 1.0);
    fit.final_objective = f;
    fit.converged = converged;
    return fit;
}

// Ability scores mapped onto [0, 100] by min-max so IRT rankings can sit on
// the same scale as propagation rankings.
inline std::vector<double> irt_ability_scores(const IRTFit& fit) {
    return normalize_scores(fit.abilities, NormalizationMode::MinMax100);
}

}  // namespace rankprop
