#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rankprop/errors.hpp"
#include "rankprop/propagation.hpp"
#include "rankprop/response_matrix.hpp"
#include "rankprop/rng.hpp"

namespace rankprop {

enum class CorrelationMethod { Spearman, Pearson, KendallTauB };

inline std::string to_string(CorrelationMethod m) {
    switch (m) {
        case CorrelationMethod::Spearman: return "spearman";
        case CorrelationMethod::Pearson: return "pearson";
        default: return "kendall_tau_b";
    }
}

struct CorrelationReport {
    CorrelationMethod method = CorrelationMethod::Spearman;
    double coefficient = 0.0;
    std::size_t n = 0;
};

namespace detail {

// Average ranks (1-based), ties get the midrank.
inline std::vector<double> midranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
        i = j + 1;
    }
    return ranks;
}

// Pearson with exact endpoints: identical inputs give 1.0, mirrored inputs
// (x + y constant) give -1.0, so agreement of equal rankings never decays
// to 1 - 1ulp through the product formula.
inline double pearson_core(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw ZeroVariance("correlation undefined for a constant input");
    if (x == y) return 1.0;
    bool mirrored = true;
    const double s0 = x[0] + y[0];
    for (std::size_t i = 1; i < n && mirrored; ++i) mirrored = (x[i] + y[i] == s0);
    if (mirrored) return -1.0;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Tau-b over exact pair counts. The +/-1 endpoints are detected in integer
// arithmetic: tau = +/-1 iff (C - D)^2 equals the squared denominator.
inline double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) {
                ++ties_x;
                ++ties_y;
            } else if (dx == 0.0) {
                ++ties_x;
            } else if (dy == 0.0) {
                ++ties_y;
            } else if ((dx > 0.0) == (dy > 0.0)) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    const long long n0 = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
    if (n0 == ties_x || n0 == ties_y)
        throw ZeroVariance("tau-b undefined when one input is all ties");
    const long long num = concordant - discordant;
    const __int128 denom_sq =
        static_cast<__int128>(n0 - ties_x) * static_cast<__int128>(n0 - ties_y);
    if (static_cast<__int128>(num) * num == denom_sq) return num > 0 ? 1.0 : -1.0;
    return static_cast<double>(num) /
           std::sqrt(static_cast<double>(n0 - ties_x) * static_cast<double>(n0 - ties_y));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

}  // namespace detail

// Trial t of a seeded study draws from (seed, t), never from shared state,
// so results do not depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return detail::splitmix64(seed ^ detail::splitmix64(index + 1));
}

inline CorrelationReport correlate(const std::vector<double>& x, const std::vector<double>& y,
                                   CorrelationMethod method) {
    if (x.size() != y.size())
        throw LengthMismatch("correlate needs vectors of equal length");
    if (x.size() < 2) throw LengthMismatch("correlate needs at least 2 points");
    CorrelationReport r;
    r.method = method;
    r.n = x.size();
    switch (method) {
        case CorrelationMethod::Pearson:
            r.coefficient = detail::pearson_core(x, y);
            break;
        case CorrelationMethod::Spearman:
            r.coefficient = detail::pearson_core(detail::midranks(x), detail::midranks(y));
            break;
        case CorrelationMethod::KendallTauB:
            r.coefficient = detail::kendall_tau_b(x, y);
            break;
    }
    return r;
}

// Cohen's kappa with chance agreement from the two marginal distributions.
template <typename Label>
inline double cohen_kappa(const std::vector<Label>& a, const std::vector<Label>& b) {
    if (a.size() != b.size()) throw LengthMismatch("kappa needs vectors of equal length");
    if (a.empty()) throw LengthMismatch("kappa needs at least 1 pair");
    const double n = static_cast<double>(a.size());
    std::map<Label, double> ca, cb;
    double matches = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ca[a[i]] += 1.0;
        cb[b[i]] += 1.0;
        if (a[i] == b[i]) matches += 1.0;
    }
    double pe = 0.0;
    for (const auto& [label, count] : ca) {
        auto it = cb.find(label);
        if (it != cb.end()) pe += (count / n) * (it->second / n);
    }
    if (pe >= 1.0)
        throw DegenerateAgreement("kappa undefined: chance agreement is 1");
    const double po = matches / n;
    return (po - pe) / (1.0 - pe);
}

// Extrapolated rank-biased overlap for two full rankings of the same ids.
// Identical rankings return exactly 1.
inline double rank_biased_overlap(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValueOutOfRange("rbo persistence must lie in (0,1)");
    if (a.size() != b.size())
        throw NotSamePermutationDomain("rankings differ in length");
    std::unordered_set<std::string> sa(a.begin(), a.end());
    if (sa.size() != a.size()) throw NotSamePermutationDomain("duplicate ids in ranking");
    for (const auto& id : b)
        if (!sa.count(id)) throw NotSamePermutationDomain("rankings cover different ids");
    std::unordered_set<std::string> sb(b.begin(), b.end());
    if (sb.size() != b.size()) throw NotSamePermutationDomain("duplicate ids in ranking");
    if (a == b) return 1.0;

    const std::size_t n = a.size();
    std::unordered_set<std::string> seen_a, seen_b;
    seen_a.reserve(n);
    seen_b.reserve(n);
    double overlap = 0.0, sum = 0.0, pd = 1.0;
    for (std::size_t d = 1; d <= n; ++d) {
        const std::string& xa = a[d - 1];
        const std::string& xb = b[d - 1];
        if (xa == xb) {
            overlap += 1.0;
        } else {
            if (seen_b.count(xa)) overlap += 1.0;
            if (seen_a.count(xb)) overlap += 1.0;
        }
        seen_a.insert(xa);
        seen_b.insert(xb);
        pd *= p;
        sum += (overlap / static_cast<double>(d)) * pd;
    }
    // full same-domain rankings: residual term is A_n * p^n with A_n = 1
    return (1.0 - p) / p * sum + pd;
}

// ICC(1,1): one-way random effects, single rater. ratings is items x raters.
inline double icc1(const std::vector<std::vector<double>>& ratings) {
    const std::size_t n = ratings.size();
    if (n < 2) throw DimensionMismatch("icc1 needs at least 2 items");
    const std::size_t k = ratings[0].size();
    if (k < 2) throw DimensionMismatch("icc1 needs at least 2 raters");
    for (const auto& row : ratings)
        if (row.size() != k) throw DimensionMismatch("icc1 needs a rectangular table");

    double grand = 0.0;
    std::vector<double> item_mean(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (double v : ratings[i]) item_mean[i] += v;
        item_mean[i] /= static_cast<double>(k);
        grand += item_mean[i];
    }
    grand /= static_cast<double>(n);

    double ss_between = 0.0, ss_within = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = item_mean[i] - grand;
        ss_between += d * d;
        for (double v : ratings[i]) {
            const double w = v - item_mean[i];
            ss_within += w * w;
        }
    }
    const double ms_between = static_cast<double>(k) * ss_between / static_cast<double>(n - 1);
    const double ms_within = ss_within / static_cast<double>(n * (k - 1));
    const double denom = ms_between + static_cast<double>(k - 1) * ms_within;
    if (denom == 0.0) throw DegenerateVariance("icc1 undefined: no variance anywhere");
    return (ms_between - ms_within) / denom;
}

namespace detail {

inline ResponseMatrix select_models(const ResponseMatrix& m, const std::vector<std::size_t>& cols) {
    ResponseMatrix out;
    out.question_ids = m.question_ids;
    out.dataset_tags = m.dataset_tags;
    out.model_ids.reserve(cols.size());
    for (std::size_t j : cols) out.model_ids.push_back(m.model_ids[j]);
    out.values.reserve(m.q_count() * cols.size());
    for (std::size_t q = 0; q < m.q_count(); ++q)
        for (std::size_t j : cols) out.values.push_back(m.at(q, j));
    out.is_binary = m.is_binary;
    return out;
}

inline ResponseMatrix drop_dataset(const ResponseMatrix& m, const std::string& tag) {
    ResponseMatrix out;
    out.model_ids = m.model_ids;
    for (std::size_t q = 0; q < m.q_count(); ++q) {
        if (m.dataset_tags[q] == tag) continue;
        out.question_ids.push_back(m.question_ids[q]);
        out.dataset_tags.push_back(m.dataset_tags[q]);
        const double* row = m.values.data() + q * m.m_count();
        out.values.insert(out.values.end(), row, row + m.m_count());
    }
    out.is_binary = m.is_binary;
    return out;
}

inline double trial_seconds(const ConvergenceTrace& tr) {
    double s = 0.0;
    for (double v : tr.per_iteration_seconds) s += v;
    return s;
}

inline void mean_sd(const std::vector<double>& v, double& mean, double& sd) {
    mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    sd = std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace detail

struct RobustnessReport {
    std::size_t k_removed = 0;
    std::size_t trials = 0;
    bool leave_one_out = false;  // k=1, trials=M: each model removed once
    double question_rho_mean = 0.0, question_rho_sd = 0.0;
    double model_rho_mean = 0.0, model_rho_sd = 0.0;
    double mean_questions_dropped = 0.0;  // full-run questions missing from a trial
    double mean_seconds = 0.0;            // propagation time per trial
    double full_seconds = 0.0;            // propagation time of the full-pool run
    double time_reduction_pct = 0.0;      // 100 * (1 - mean_seconds / full_seconds)
    std::vector<double> question_rhos;    // per trial
    std::vector<double> model_rhos;       // per trial
    std::vector<std::vector<std::string>> removed;  // per trial, removed model ids
};

// Removes k models per trial, re-filters and re-propagates, and reports
// Spearman agreement with the full run over commonly retained questions and
// surviving models. k=1 with trials=M enumerates every model once instead
// of sampling. k=0 is the degenerate self-check and yields rho = 1 exactly.
inline RobustnessReport model_removal_study(const ResponseMatrix& m, std::size_t k,
                                            std::size_t trials, const PropagationConfig& cfg,
                                            std::uint64_t seed) {
    const std::size_t M = m.m_count();
    if (k >= M) throw InvalidK("cannot remove " + std::to_string(k) + " of " +
                               std::to_string(M) + " models");
    if (trials < 1) throw InvalidK("need at least 1 trial");

    const PropagationRun full = run_propagation(m, cfg);
    std::unordered_map<std::string, double> full_q;
    full_q.reserve(full.ts.q_count);
    for (std::size_t q = 0; q < full.ts.q_count; ++q)
        full_q.emplace(full.ts.retained_question_ids[q], full.scores.pi_q[q]);
    std::unordered_map<std::string, double> full_m;
    for (std::size_t j = 0; j < M; ++j) full_m.emplace(m.model_ids[j], full.scores.pi_m[j]);

    RobustnessReport rep;
    rep.k_removed = k;
    rep.trials = trials;
    rep.leave_one_out = (k == 1 && trials == M);

    std::vector<double> dropped_counts, seconds;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<std::size_t> removed_idx;
        if (rep.leave_one_out) {
            removed_idx.push_back(t);
        } else {
            Rng rng(derive_seed(seed, t));
            removed_idx = rng.sample_subset(M, k);
            std::sort(removed_idx.begin(), removed_idx.end());
        }
        std::vector<bool> gone(M, false);
        std::vector<std::string> removed_ids;
        for (std::size_t j : removed_idx) {
            gone[j] = true;
            removed_ids.push_back(m.model_ids[j]);
        }
        std::vector<std::size_t> kept;
        kept.reserve(M - k);
        for (std::size_t j = 0; j < M; ++j)
            if (!gone[j]) kept.push_back(j);

        const PropagationRun trial = run_propagation(detail::select_models(m, kept), cfg);

        std::unordered_map<std::string, double> trial_q;
        trial_q.reserve(trial.ts.q_count);
        for (std::size_t q = 0; q < trial.ts.q_count; ++q)
            trial_q.emplace(trial.ts.retained_question_ids[q], trial.scores.pi_q[q]);
        std::vector<double> xq, yq;
        for (std::size_t q = 0; q < full.ts.q_count; ++q) {
            auto it = trial_q.find(full.ts.retained_question_ids[q]);
            if (it == trial_q.end()) continue;
            xq.push_back(full.scores.pi_q[q]);
            yq.push_back(it->second);
        }
        if (xq.size() < 2)
            throw EmptyCommonQuestionSet("fewer than 2 questions retained by both runs");

        std::vector<double> xm, ym;
        for (std::size_t j = 0; j < trial.ts.m_count; ++j) {
            xm.push_back(full_m.at(trial.ts.model_ids[j]));
            ym.push_back(trial.scores.pi_m[j]);
        }

        rep.question_rhos.push_back(
            correlate(xq, yq, CorrelationMethod::Spearman).coefficient);
        rep.model_rhos.push_back(correlate(xm, ym, CorrelationMethod::Spearman).coefficient);
        rep.removed.push_back(std::move(removed_ids));
        dropped_counts.push_back(static_cast<double>(full.ts.q_count - xq.size()));
        seconds.push_back(detail::trial_seconds(trial.trace));
    }

    detail::mean_sd(rep.question_rhos, rep.question_rho_mean, rep.question_rho_sd);
    detail::mean_sd(rep.model_rhos, rep.model_rho_mean, rep.model_rho_sd);
    double unused_sd = 0.0;
    detail::mean_sd(dropped_counts, rep.mean_questions_dropped, unused_sd);
    detail::mean_sd(seconds, rep.mean_seconds, unused_sd);
    rep.full_seconds = detail::trial_seconds(full.trace);
    if (rep.full_seconds > 0.0)
        rep.time_reduction_pct = 100.0 * (1.0 - rep.mean_seconds / rep.full_seconds);
    return rep;
}

struct DatasetRemovalRow {
    std::string dataset;
    std::size_t questions_held_out = 0;
    double model_rho = 0.0;  // Spearman vs the full run's competencies
};

// Holds out one dataset at a time and reports how stable the model ranking
// is without it. Datasets appear in first-appearance order.
inline std::vector<DatasetRemovalRow> dataset_removal_study(const ResponseMatrix& m,
                                                            const PropagationConfig& cfg) {
    if (!m.has_tags()) throw MissingTags("dataset removal requires dataset tags");
    std::vector<std::string> tags;
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& t : m.dataset_tags) {
        if (counts.emplace(t, 0).second) tags.push_back(t);
        ++counts[t];
    }
    if (tags.size() < 2) throw SingleDataset("dataset removal needs at least 2 datasets");

    const PropagationRun full = run_propagation(m, cfg);
    std::unordered_map<std::string, double> full_m;
    for (std::size_t j = 0; j < m.m_count(); ++j)
        full_m.emplace(m.model_ids[j], full.scores.pi_m[j]);

    std::vector<DatasetRemovalRow> rows;
    rows.reserve(tags.size());
    for (const auto& tag : tags) {
        const PropagationRun held = run_propagation(detail::drop_dataset(m, tag), cfg);
        std::vector<double> x, y;
        for (std::size_t j = 0; j < held.ts.m_count; ++j) {
            x.push_back(full_m.at(held.ts.model_ids[j]));
            y.push_back(held.scores.pi_m[j]);
        }
        rows.push_back({tag, counts[tag],
                        correlate(x, y, CorrelationMethod::Spearman).coefficient});
    }
    return rows;
}

struct PoolCorrelation {
    CorrelationReport spearman, pearson, kendall;
    std::size_t common_questions = 0;
};

// Difficulty agreement between two model pools: each pool is propagated on
// its own columns, then the stationary question scores are compared over
// the questions both pools retain.
inline PoolCorrelation pool_difficulty_correlation(const ResponseMatrix& m,
                                                   const std::vector<std::string>& pool_a,
                                                   const std::vector<std::string>& pool_b,
                                                   const PropagationConfig& cfg) {
    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t j = 0; j < m.m_count(); ++j) col.emplace(m.model_ids[j], j);
    auto resolve = [&](const std::vector<std::string>& ids) {
        if (ids.size() < 2) throw DimensionMismatch("each pool needs at least 2 models");
        std::vector<std::size_t> idx;
        idx.reserve(ids.size());
        for (const auto& id : ids) {
            auto it = col.find(id);
            if (it == col.end()) throw DimensionMismatch("unknown model id: " + id);
            idx.push_back(it->second);
        }
        return idx;
    };

    const PropagationRun ra = run_propagation(detail::select_models(m, resolve(pool_a)), cfg);
    const PropagationRun rb = run_propagation(detail::select_models(m, resolve(pool_b)), cfg);

    std::unordered_map<std::string, double> qb;
    qb.reserve(rb.ts.q_count);
    for (std::size_t q = 0; q < rb.ts.q_count; ++q)
        qb.emplace(rb.ts.retained_question_ids[q], rb.scores.pi_q[q]);
    std::vector<double> x, y;
    for (std::size_t q = 0; q < ra.ts.q_count; ++q) {
        auto it = qb.find(ra.ts.retained_question_ids[q]);
        if (it == qb.end()) continue;
        x.push_back(ra.scores.pi_q[q]);
        y.push_back(it->second);
    }
    if (x.size() < 2)
        throw EmptyCommonQuestionSet("pools share fewer than 2 retained questions");

    PoolCorrelation out;
    out.spearman = correlate(x, y, CorrelationMethod::Spearman);
    out.pearson = correlate(x, y, CorrelationMethod::Pearson);
    out.kendall = correlate(x, y, CorrelationMethod::KendallTauB);
    out.common_questions = x.size();
    return out;
}

struct ConsensusReport {
    std::vector<double> per_rater_alignment;  // over that rater's non-skipped pairs
    double consensus_alignment = 0.0;         // ties count as non-matches
    double kappa = 0.0;                       // predictions vs strict majorities
    std::size_t pairs_with_votes = 0;
    std::size_t tie_pairs = 0;
};

// Agreement between per-pair binary predictions and human judgments with
// skips. judgments is raters x pairs; skip_value marks abstentions. Pairs
// nobody judged are excluded; tie votes stay in the denominator as
// non-matches but are excluded from kappa (no majority label exists).
inline ConsensusReport consensus_alignment(const std::vector<int>& predictions,
                                           const std::vector<std::vector<int>>& judgments,
                                           int skip_value = -1) {
    if (judgments.empty()) throw NoValidPairs("no raters provided");
    const std::size_t n = predictions.size();
    for (const auto& row : judgments)
        if (row.size() != n)
            throw LengthMismatch("each rater must judge the same pair list");

    ConsensusReport rep;
    for (std::size_t r = 0; r < judgments.size(); ++r) {
        double voted = 0.0, matched = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (judgments[r][i] == skip_value) continue;
            voted += 1.0;
            if (judgments[r][i] == predictions[i]) matched += 1.0;
        }
        if (voted == 0.0)
            throw NoValidPairs("rater " + std::to_string(r) + " skipped every pair");
        rep.per_rater_alignment.push_back(matched / voted);
    }

    double matches = 0.0;
    std::vector<int> kappa_pred, kappa_major;
    for (std::size_t i = 0; i < n; ++i) {
        std::map<int, std::size_t> votes;
        for (const auto& row : judgments)
            if (row[i] != skip_value) ++votes[row[i]];
        if (votes.empty()) continue;
        ++rep.pairs_with_votes;
        std::size_t best = 0;
        int label = 0;
        bool tie = false;
        for (const auto& [value, count] : votes) {
            if (count > best) {
                best = count;
                label = value;
                tie = false;
            } else if (count == best) {
                tie = true;
            }
        }
        if (tie) {
            ++rep.tie_pairs;
            continue;  // counted in the denominator, never a match
        }
        if (label == predictions[i]) matches += 1.0;
        kappa_pred.push_back(predictions[i]);
        kappa_major.push_back(label);
    }
    if (rep.pairs_with_votes == 0) throw NoValidPairs("every pair was skipped by every rater");
    rep.consensus_alignment = matches / static_cast<double>(rep.pairs_with_votes);
    if (kappa_pred.empty()) throw NoValidPairs("no pair has a strict majority");
    try {
        rep.kappa = cohen_kappa(kappa_pred, kappa_major);
    } catch (const DegenerateAgreement&) {
        // chance agreement hits 1 only when both sides sit on one shared
        // label, which forces perfect observed agreement; kappa's limit
        // along that boundary is 1
        rep.kappa = 1.0;
    }
    return rep;
}

struct WindowRow {
    std::size_t window_index = 0;
    std::size_t size = 0;
    double mean_abs_displacement = 0.0;
    double max_abs_displacement = 0.0;
    double kendall_tau = 0.0;
};

// Splits ids into consecutive windows by rank_a and measures, per window,
// how far rank_b strays: mean/max |rank_a - rank_b| and Kendall tau-b of
// the two orderings. Windows where tau-b is undefined (single element, or
// one side all tied) report 1.0 when the window vectors agree, else 0.0.
inline std::vector<WindowRow> windowed_displacement(const std::vector<double>& rank_a,
                                                    const std::vector<double>& rank_b,
                                                    std::size_t window_size) {
    if (rank_a.size() != rank_b.size())
        throw LengthMismatch("rank vectors must have equal length");
    const std::size_t n = rank_a.size();
    if (window_size == 0) throw ValueOutOfRange("window size must be positive");
    if (window_size > n)
        throw WindowLargerThanN("window of " + std::to_string(window_size) + " exceeds " +
                                std::to_string(n) + " items");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rank_a[a] < rank_a[b]; });

    std::vector<WindowRow> rows;
    for (std::size_t start = 0, w = 0; start < n; start += window_size, ++w) {
        const std::size_t end = std::min(start + window_size, n);
        WindowRow row;
        row.window_index = w;
        row.size = end - start;
        std::vector<double> wa, wb;
        for (std::size_t k = start; k < end; ++k) {
            const std::size_t i = order[k];
            const double d = std::abs(rank_a[i] - rank_b[i]);
            row.mean_abs_displacement += d;
            row.max_abs_displacement = std::max(row.max_abs_displacement, d);
            wa.push_back(rank_a[i]);
            wb.push_back(rank_b[i]);
        }
        row.mean_abs_displacement /= static_cast<double>(row.size);
        if (row.size < 2) {
            row.kendall_tau = 1.0;
        } else {
            try {
                row.kendall_tau = detail::kendall_tau_b(wa, wb);
            } catch (const ZeroVariance&) {
                row.kendall_tau = wa == wb ? 1.0 : 0.0;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace rankprop
