#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "rankprop/errors.hpp"
#include "rankprop/response_matrix.hpp"

namespace rankprop {

enum class NormalizationMode { Max100, MinMax100, Raw };

inline std::string to_string(NormalizationMode m) {
    switch (m) {
        case NormalizationMode::Max100: return "max100";
        case NormalizationMode::MinMax100: return "minmax100";
        default: return "raw";
    }
}

// max100 rescales so the top score is 100 and zero stays zero; minmax100
// maps the observed range onto [0, 100]; raw passes through untouched.
inline std::vector<double> normalize_scores(const std::vector<double>& scores,
                                            NormalizationMode mode) {
    if (scores.empty()) throw DegenerateRange("cannot normalize an empty score vector");
    std::vector<double> out(scores);
    switch (mode) {
        case NormalizationMode::Raw:
            break;
        case NormalizationMode::Max100: {
            const double mx = *std::max_element(out.begin(), out.end());
            if (!(mx > 0.0)) throw DegenerateRange("max100 needs a positive maximum");
            // divide first so the maximum maps to exactly 100
            for (double& v : out) v = v / mx * 100.0;
            break;
        }
        case NormalizationMode::MinMax100: {
            const auto [mn_it, mx_it] = std::minmax_element(out.begin(), out.end());
            const double mn = *mn_it, mx = *mx_it;
            if (mx == mn) throw DegenerateRange("minmax100 needs a non-degenerate range");
            for (double& v : out) v = (v - mn) / (mx - mn) * 100.0;
            break;
        }
    }
    return out;
}

struct RankEntry {
    std::string id;
    double raw_score = 0.0;
    double normalized_score = 0.0;
    std::size_t rank = 0;       // competition rank, 1-based; 0 for sentinels
    std::size_t tie_group = 0;  // 1-based index of the tie cluster; 0 for sentinels
    bool sentinel = false;
};

struct RankReport {
    std::vector<RankEntry> entries;
    NormalizationMode normalization = NormalizationMode::Max100;
    double sentinel_solved = -1.0;
    double sentinel_failed = 101.0;
};

// Descending competition ranking ("1224"): tied scores share the rank of the
// first member; the next distinct score resumes at its 1-based position.
// Ties are detected by exact equality, which is what identical response rows
// produce. Entry order: descending score, original order within a tie.
inline RankReport rank_entries(const std::vector<std::string>& ids,
                               const std::vector<double>& raw,
                               const std::vector<double>& normalized,
                               NormalizationMode mode) {
    if (ids.size() != raw.size() || ids.size() != normalized.size())
        throw DimensionMismatch("rank_entries inputs must have equal length");
    const std::size_t n = ids.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return normalized[a] > normalized[b];
    });
    RankReport report;
    report.normalization = mode;
    report.entries.reserve(n);
    std::size_t group = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t i = order[pos];
        RankEntry e;
        e.id = ids[i];
        e.raw_score = raw[i];
        e.normalized_score = normalized[i];
        if (pos == 0 || normalized[i] != normalized[order[pos - 1]]) {
            e.rank = pos + 1;
            ++group;
        } else {
            e.rank = report.entries.back().rank;
        }
        e.tie_group = group;
        report.entries.push_back(std::move(e));
    }
    return report;
}

inline RankReport rank_entries(const std::vector<std::string>& ids,
                               const std::vector<double>& raw, NormalizationMode mode) {
    return rank_entries(ids, raw, normalize_scores(raw, mode), mode);
}

enum class TierLabel { Easy, Medium, Hard };

inline std::string to_string(TierLabel t) {
    switch (t) {
        case TierLabel::Easy: return "easy";
        case TierLabel::Medium: return "medium";
        default: return "hard";
    }
}

struct DifficultyTier {
    TierLabel label = TierLabel::Easy;
    double lower = 0.0;  // inclusive
    double upper = 0.0;  // exclusive, except the top tier which includes 100
};

// Default three-way split of normalized difficulty: [0,33) easy, [33,67)
// medium, [67,100] hard.
inline std::array<DifficultyTier, 3> make_tiers(double a = 33.0, double b = 67.0) {
    if (!(0.0 < a && a < b && b < 100.0))
        throw ValueOutOfRange("tier bounds must satisfy 0 < a < b < 100");
    return {DifficultyTier{TierLabel::Easy, 0.0, a}, DifficultyTier{TierLabel::Medium, a, b},
            DifficultyTier{TierLabel::Hard, b, 100.0}};
}

inline std::vector<TierLabel> assign_tiers(const std::vector<double>& normalized,
                                           const std::array<DifficultyTier, 3>& tiers) {
    std::vector<TierLabel> out;
    out.reserve(normalized.size());
    for (double v : normalized) {
        if (!(v >= 0.0 && v <= 100.0))
            throw UnnormalizedInput("tier assignment expects scores in [0, 100], got " +
                                    std::to_string(v));
        if (v < tiers[0].upper)
            out.push_back(tiers[0].label);
        else if (v < tiers[1].upper)
            out.push_back(tiers[1].label);
        else
            out.push_back(tiers[2].label);
    }
    return out;
}

// Fraction of a model's correct answers that land in each tier. Correctness
// is value > 0.5 so the binary case reads naturally and graded credit counts
// only clear successes.
inline std::array<double, 3> tier_breakdown(const ResponseMatrix& m, const std::string& model_id,
                                            const std::vector<TierLabel>& tiers) {
    if (tiers.size() != m.question_ids.size())
        throw DimensionMismatch("tier labels must cover every question");
    std::size_t col = m.model_ids.size();
    for (std::size_t j = 0; j < m.model_ids.size(); ++j)
        if (m.model_ids[j] == model_id) {
            col = j;
            break;
        }
    if (col == m.model_ids.size()) throw DimensionMismatch("unknown model id: " + model_id);
    std::array<double, 3> counts = {0.0, 0.0, 0.0};
    double total = 0.0;
    for (std::size_t q = 0; q < m.question_ids.size(); ++q)
        if (m.at(q, col) > 0.5) {
            counts[static_cast<std::size_t>(tiers[q])] += 1.0;
            total += 1.0;
        }
    if (total == 0.0) throw NoCorrectAnswers("model " + model_id + " has no correct answers");
    for (double& c : counts) c /= total;
    return counts;
}

// Appends sentinel rows for filtered questions: universally solved questions
// get the "solved" sentinel (easiest by convention), universally failed ones
// the "failed" sentinel. Sentinels carry no rank.
inline void merge_filtered(RankReport& report, const FilterReport& fr) {
    std::unordered_set<std::string> seen;
    seen.reserve(report.entries.size());
    for (const auto& e : report.entries) seen.insert(e.id);
    auto append = [&](const std::vector<std::string>& ids, double value) {
        for (const auto& id : ids) {
            if (!seen.insert(id).second)
                throw IdCollision("sentinel id already present in report: " + id);
            RankEntry e;
            e.id = id;
            e.raw_score = value;
            e.normalized_score = value;
            e.sentinel = true;
            report.entries.push_back(std::move(e));
        }
    };
    append(fr.universally_solved, report.sentinel_solved);
    append(fr.universally_failed, report.sentinel_failed);
}

}  // namespace rankprop
