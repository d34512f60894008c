#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "rankprop/errors.hpp"
#include "rankprop/io.hpp"
#include "rankprop/propagation.hpp"
#include "rankprop/response_matrix.hpp"
#include "rankprop/scoring.hpp"

namespace rankprop {

struct RankOptions {
    PropagationConfig prop;
    NormalizationMode normalization = NormalizationMode::Max100;
    double tier_a = 33.0, tier_b = 67.0;
    bool force_continuous = false;  // run {0,1} data through the continuous path
    std::uint64_t seed = 0;         // echoed for provenance; ranking is deterministic
    bool include_timings = false;   // wall-clock fields break byte-determinism, so opt-in
};

struct ModelRow {
    std::string id;
    double raw = 0.0, normalized = 0.0;
    std::size_t rank = 0, tie_group = 0;
};

struct QuestionRow {
    std::string id;
    std::string dataset;  // empty when the input carries no tags
    double raw = 0.0, normalized = 0.0;
    std::size_t rank = 0, tie_group = 0;  // 0 for sentinels
    bool sentinel = false;
    bool has_tier = false;  // false under raw normalization
    TierLabel tier = TierLabel::Easy;
};

struct RunReport {
    std::string command = "rank";
    RankOptions options;
    FilterReport filter;
    ConvergenceTrace trace;
    std::vector<ModelRow> models;
    std::vector<QuestionRow> questions;  // ranked retained questions, then sentinels
};

// Full ranking pipeline: validate -> filter -> transitions -> propagate ->
// normalize -> rank -> tier -> merge sentinels. Sentinel questions score
// -1 (universally solved) or 101 (universally failed) and sit outside the
// 0-100 scale on purpose; their tiers are fixed by convention.
inline RunReport run_rank(const ResponseMatrix& input, const RankOptions& opt) {
    input.validate();
    ResponseMatrix m = input;
    m.recompute_binary_flag();
    if (opt.force_continuous) m.is_binary = false;

    RunReport rep;
    rep.options = opt;
    auto [kept, fr] = filter_extremes(m);
    rep.filter = fr;
    // filtering recomputes the binary flag from the retained values, which
    // would quietly undo the forced continuous path on {0,1} data
    if (opt.force_continuous) kept.is_binary = false;
    const TransitionSystem ts = build_transitions(kept);
    auto [scores, trace] = propagate(ts, opt.prop);
    rep.trace = std::move(trace);

    {
        const auto norm = normalize_scores(scores.pi_m, opt.normalization);
        const RankReport rr = rank_entries(ts.model_ids, scores.pi_m, norm, opt.normalization);
        for (const auto& e : rr.entries)
            rep.models.push_back({e.id, e.raw_score, e.normalized_score, e.rank, e.tie_group});
    }

    std::unordered_map<std::string, std::string> tag_of;
    if (input.has_tags())
        for (std::size_t q = 0; q < input.q_count(); ++q)
            tag_of.emplace(input.question_ids[q], input.dataset_tags[q]);
    std::unordered_set<std::string> solved(rep.filter.universally_solved.begin(),
                                           rep.filter.universally_solved.end());

    const auto norm = normalize_scores(scores.pi_q, opt.normalization);
    RankReport rr = rank_entries(ts.retained_question_ids, scores.pi_q, norm, opt.normalization);
    merge_filtered(rr, rep.filter);
    const bool tiers_apply = opt.normalization != NormalizationMode::Raw;
    const auto tiers = make_tiers(opt.tier_a, opt.tier_b);
    rep.questions.reserve(rr.entries.size());
    for (const auto& e : rr.entries) {
        QuestionRow row;
        row.id = e.id;
        if (auto it = tag_of.find(e.id); it != tag_of.end()) row.dataset = it->second;
        row.raw = e.raw_score;
        row.normalized = e.normalized_score;
        row.rank = e.rank;
        row.tie_group = e.tie_group;
        row.sentinel = e.sentinel;
        if (tiers_apply) {
            row.has_tier = true;
            row.tier = e.sentinel
                           ? (solved.count(e.id) ? TierLabel::Easy : TierLabel::Hard)
                           : assign_tiers({e.normalized_score}, tiers)[0];
        }
        rep.questions.push_back(std::move(row));
    }
    return rep;
}

inline nlohmann::ordered_json report_to_json(const RunReport& rep) {
    nlohmann::ordered_json j;
    j["command"] = rep.command;
    j["config"] = {{"alpha", rep.options.prop.alpha},
                   {"epsilon", rep.options.prop.epsilon},
                   {"max_iterations", rep.options.prop.max_iterations},
                   {"normalization", to_string(rep.options.normalization)},
                   {"continuous", rep.options.force_continuous},
                   {"tiers", {rep.options.tier_a, rep.options.tier_b}},
                   {"seed", rep.options.seed}};
    j["filter"] = {{"universally_solved", rep.filter.universally_solved},
                   {"universally_failed", rep.filter.universally_failed},
                   {"dangling_models", rep.filter.dangling_models},
                   {"retained_questions", rep.filter.retained_question_count},
                   {"extreme_fraction", rep.filter.extreme_fraction}};
    j["convergence"] = {{"iterations", rep.trace.iterations},
                        {"converged", rep.trace.converged},
                        {"final_delta", rep.trace.deltas.empty() ? 0.0 : rep.trace.deltas.back()},
                        {"deltas", rep.trace.deltas}};
    auto& models = j["models"] = nlohmann::ordered_json::array();
    for (const auto& m : rep.models)
        models.push_back({{"id", m.id},
                          {"raw_score", m.raw},
                          {"normalized_score", m.normalized},
                          {"rank", m.rank},
                          {"tie_group", m.tie_group}});
    auto& questions = j["questions"] = nlohmann::ordered_json::array();
    const bool tagged = [&] {
        for (const auto& q : rep.questions)
            if (!q.dataset.empty()) return true;
        return false;
    }();
    for (const auto& q : rep.questions) {
        nlohmann::ordered_json row;
        row["id"] = q.id;
        if (tagged) row["dataset"] = q.dataset;
        row["raw_score"] = q.raw;
        row["normalized_score"] = q.normalized;
        row["rank"] = q.rank;
        row["tie_group"] = q.tie_group;
        if (q.has_tier)
            row["tier"] = to_string(q.tier);
        else
            row["tier"] = nullptr;
        row["sentinel"] = q.sentinel;
        questions.push_back(std::move(row));
    }
    if (rep.options.include_timings) {
        double total = 0.0;
        for (double s : rep.trace.per_iteration_seconds) total += s;
        j["timing"] = {{"total_seconds", total},
                       {"per_iteration_seconds", rep.trace.per_iteration_seconds}};
    }
    return j;
}

// Flat two-table layout for --format csv: a models table, a blank line,
// then a questions table. Section headers make the tables self-describing.
inline std::string report_to_csv(const RunReport& rep) {
    std::string out = "id,raw_score,normalized_score,rank,tie_group\n";
    for (const auto& m : rep.models)
        out += detail::csv_escape(m.id) + ',' + format_double(m.raw) + ',' +
               format_double(m.normalized) + ',' + std::to_string(m.rank) + ',' +
               std::to_string(m.tie_group) + '\n';
    out += "\nid,dataset,raw_score,normalized_score,rank,tie_group,tier,sentinel\n";
    for (const auto& q : rep.questions)
        out += detail::csv_escape(q.id) + ',' + detail::csv_escape(q.dataset) + ',' +
               format_double(q.raw) + ',' + format_double(q.normalized) + ',' +
               std::to_string(q.rank) + ',' + std::to_string(q.tie_group) + ',' +
               (q.has_tier ? to_string(q.tier) : std::string()) + ',' +
               (q.sentinel ? "1" : "0") + '\n';
    return out;
}

}  // namespace rankprop
