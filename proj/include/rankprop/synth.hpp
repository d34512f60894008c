#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rankprop/errors.hpp"
#include "rankprop/response_matrix.hpp"
#include "rankprop/rng.hpp"

namespace rankprop {

// Five-model, 100-question study: 70 easy / 21 medium / 9 hard questions,
// fixed per-model solve counts per category. The default seed is pinned so
// the shipped instance separates M1..M5 the intended way; any seed keeps
// the column sums (85, 85, 60, 61, 61).
struct CaseStudySpec {
    std::size_t easy_count = 70;
    std::size_t medium_count = 21;
    std::size_t hard_count = 9;
    // per model: questions solved in (easy, medium, hard)
    std::array<std::array<std::size_t, 3>, 5> solve_counts = {{
        {{70, 10, 5}},
        {{70, 11, 4}},
        {{47, 13, 0}},
        {{46, 15, 0}},
        {{47, 14, 0}},
    }};
    std::uint64_t seed = 236921;
};

inline ResponseMatrix generate_case_study(const CaseStudySpec& spec) {
    const std::array<std::size_t, 3> cat_sizes = {spec.easy_count, spec.medium_count,
                                                  spec.hard_count};
    const std::array<std::string, 3> cat_names = {"easy", "medium", "hard"};
    for (const auto& counts : spec.solve_counts)
        for (std::size_t c = 0; c < 3; ++c)
            if (counts[c] > cat_sizes[c])
                throw CountExceedsCategory("solve count " + std::to_string(counts[c]) +
                                           " exceeds " + cat_names[c] + " size " +
                                           std::to_string(cat_sizes[c]));

    const std::size_t Q = spec.easy_count + spec.medium_count + spec.hard_count;
    const std::size_t M = spec.solve_counts.size();
    ResponseMatrix m;
    m.model_ids.reserve(M);
    for (std::size_t j = 0; j < M; ++j) m.model_ids.push_back("M" + std::to_string(j + 1));
    m.question_ids.reserve(Q);
    m.dataset_tags.reserve(Q);
    for (std::size_t c = 0, q = 0; c < 3; ++c)
        for (std::size_t i = 0; i < cat_sizes[c]; ++i, ++q) {
            m.question_ids.push_back("q" + std::to_string(q + 1));
            m.dataset_tags.push_back(cat_names[c]);
        }
    m.values.assign(Q * M, 0.0);

    // Category-major, model-minor draw order; each subset is the prefix of a
    // partial Fisher-Yates shuffle. Changing this order changes every seed's
    // matrix, so it is part of the format.
    Rng rng(spec.seed);
    std::size_t offset = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t j = 0; j < M; ++j)
            for (std::size_t i : rng.sample_subset(cat_sizes[c], spec.solve_counts[j][c]))
                m.at(offset + i, j) = 1.0;
        offset += cat_sizes[c];
    }
    m.is_binary = true;
    return m;
}

enum class SynthGenerator { Bernoulli, Rasch };

struct SyntheticSpec {
    std::size_t q = 0;
    std::size_t m = 0;
    double density = 0.5;
    std::uint64_t seed = 0;
    SynthGenerator generator = SynthGenerator::Bernoulli;

    void validate() const {
        if (q < 2 || m < 2) throw ValueOutOfRange("need q >= 2 and m >= 2");
        if (!(density > 0.0 && density < 1.0)) throw ValueOutOfRange("density must be in (0,1)");
    }
};

namespace detail {
inline void fill_ids(ResponseMatrix& m, std::size_t q, std::size_t mm) {
    m.question_ids.reserve(q);
    for (std::size_t i = 0; i < q; ++i) m.question_ids.push_back("q" + std::to_string(i + 1));
    m.model_ids.reserve(mm);
    for (std::size_t j = 0; j < mm; ++j) m.model_ids.push_back("m" + std::to_string(j + 1));
}
}  // namespace detail

// i.i.d. Bernoulli(density) entries, row-major draw order, no balancing.
inline ResponseMatrix generate_bernoulli(const SyntheticSpec& spec) {
    spec.validate();
    ResponseMatrix m;
    detail::fill_ids(m, spec.q, spec.m);
    m.values.resize(spec.q * spec.m);
    Rng rng(spec.seed);
    for (double& v : m.values) v = rng.uniform01() < spec.density ? 1.0 : 0.0;
    m.is_binary = true;
    return m;
}

struct RaschSample {
    ResponseMatrix matrix;
    std::vector<double> true_abilities;     // theta, per model
    std::vector<double> true_difficulties;  // beta, per question
};

// Draws theta and beta from a standard normal and samples each response
// from the one-parameter logistic link, keeping the generating parameters
// for recovery tests. Draw order: all beta, then all theta, then cells.
inline RaschSample generate_rasch(const SyntheticSpec& spec) {
    spec.validate();
    RaschSample out;
    detail::fill_ids(out.matrix, spec.q, spec.m);
    out.matrix.values.resize(spec.q * spec.m);
    Rng rng(spec.seed);
    out.true_difficulties.resize(spec.q);
    for (double& b : out.true_difficulties) b = rng.normal();
    out.true_abilities.resize(spec.m);
    for (double& t : out.true_abilities) t = rng.normal();
    for (std::size_t q = 0; q < spec.q; ++q)
        for (std::size_t j = 0; j < spec.m; ++j) {
            const double z = out.true_abilities[j] - out.true_difficulties[q];
            const double p = 1.0 / (1.0 + std::exp(-z));
            out.matrix.at(q, j) = rng.uniform01() < p ? 1.0 : 0.0;
        }
    out.matrix.is_binary = true;
    return out;
}

enum class PoolKind { HomogeneousStrong, HomogeneousWeak, Mixed };

// Pools with uniformly high, uniformly low, or spread-out skill levels.
// Skill s and difficulty d meet through a steep logistic, so homogeneous
// pools saturate many questions (high extreme fraction) while the mixed
// pool keeps most of them informative.
inline ResponseMatrix generate_pool_scenario(PoolKind kind, std::size_t q, std::uint64_t seed,
                                             std::size_t m = 10) {
    if (q < 100) throw ValueOutOfRange("pool scenario needs q >= 100");
    if (m < 2) throw ValueOutOfRange("pool scenario needs m >= 2");
    constexpr double steep = 6.0;
    ResponseMatrix out;
    detail::fill_ids(out, q, m);
    out.values.resize(q * m);
    Rng rng(seed);
    std::vector<double> d(q);
    for (double& v : d) v = rng.uniform01();
    std::vector<double> s(m);
    switch (kind) {
        case PoolKind::HomogeneousStrong:
            for (double& v : s) v = 0.75 + 0.20 * rng.uniform01();
            break;
        case PoolKind::HomogeneousWeak:
            for (double& v : s) v = 0.05 + 0.20 * rng.uniform01();
            break;
        case PoolKind::Mixed:
            for (std::size_t j = 0; j < m; ++j)
                s[j] = 0.10 + 0.80 * static_cast<double>(j) / static_cast<double>(m - 1);
            break;
    }
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double p = 1.0 / (1.0 + std::exp(-steep * (s[j] - d[i])));
            out.at(i, j) = rng.uniform01() < p ? 1.0 : 0.0;
        }
    out.is_binary = true;
    return out;
}

}  // namespace rankprop
