#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rankprop/errors.hpp"

namespace rankprop {

// Q x M correctness matrix. Entries live in [0,1]; 1 means fully correct.
// Dense row-major storage: the propagation kernels build their own sparse
// views, and completeness (no missing pairs) is part of the contract.
struct ResponseMatrix {
    std::vector<std::string> question_ids;
    std::vector<std::string> model_ids;
    std::vector<std::string> dataset_tags;  // empty, or one tag per question
    std::vector<double> values;             // row-major, Q rows, M cols
    bool is_binary = true;

    std::size_t q_count() const { return question_ids.size(); }
    std::size_t m_count() const { return model_ids.size(); }
    double at(std::size_t q, std::size_t m) const { return values[q * m_count() + m]; }
    double& at(std::size_t q, std::size_t m) { return values[q * m_count() + m]; }
    bool has_tags() const { return !dataset_tags.empty(); }

    // Row sum S(q): total solver mass for one question.
    double row_sum(std::size_t q) const {
        double s = 0.0;
        for (std::size_t m = 0; m < m_count(); ++m) s += at(q, m);
        return s;
    }

    bool row_all_ones(std::size_t q) const {
        for (std::size_t m = 0; m < m_count(); ++m)
            if (at(q, m) != 1.0) return false;
        return true;
    }

    void recompute_binary_flag() {
        for (double v : values)
            if (v != 0.0 && v != 1.0) { is_binary = false; return; }
        is_binary = true;
    }

    void validate() const {
        if (values.size() != q_count() * m_count())
            throw DimensionMismatch("values size does not match id counts");
        if (!dataset_tags.empty() && dataset_tags.size() != q_count())
            throw DimensionMismatch("dataset_tags must be empty or per-question");
        for (double v : values)
            if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                throw ValueOutOfRange("matrix entry outside [0,1]");
        std::unordered_set<std::string> seen;
        for (const auto& id : question_ids)
            if (!seen.insert(id).second) throw DuplicatePair("duplicate question id: " + id);
        seen.clear();
        for (const auto& id : model_ids)
            if (!seen.insert(id).second) throw DuplicatePair("duplicate model id: " + id);
    }
};

struct MatrixRecord {
    std::string question_id;
    std::string model_id;
    double value = 0.0;
    std::optional<std::string> dataset_tag;
};

// Assembles a complete matrix from (question, model, value) records.
// Ids keep first-appearance order. Missing pairs are an error: imputing
// would silently change S(q) and F(m).
inline ResponseMatrix build_matrix(const std::vector<MatrixRecord>& records) {
    ResponseMatrix m;
    std::unordered_map<std::string, std::size_t> qidx, midx;
    for (const auto& r : records) {
        if (!std::isfinite(r.value) || r.value < 0.0 || r.value > 1.0)
            throw ValueOutOfRange("value outside [0,1] for question '" + r.question_id +
                                  "', model '" + r.model_id + "'");
        if (qidx.emplace(r.question_id, m.question_ids.size()).second)
            m.question_ids.push_back(r.question_id);
        if (midx.emplace(r.model_id, m.model_ids.size()).second)
            m.model_ids.push_back(r.model_id);
    }
    const std::size_t Q = m.q_count(), M = m.m_count();
    if (records.size() != Q * M)
        throw IncompleteMatrix("got " + std::to_string(records.size()) + " records for a " +
                               std::to_string(Q) + "x" + std::to_string(M) + " grid");
    m.values.assign(Q * M, 0.0);
    std::vector<bool> filled(Q * M, false);
    std::vector<std::string> tags(Q);
    bool any_tag = false;
    for (const auto& r : records) {
        const std::size_t q = qidx[r.question_id], j = midx[r.model_id];
        if (filled[q * M + j])
            throw DuplicatePair("pair seen twice: '" + r.question_id + "', '" + r.model_id + "'");
        filled[q * M + j] = true;
        m.values[q * M + j] = r.value;
        if (r.dataset_tag && !r.dataset_tag->empty() && tags[q].empty()) {
            tags[q] = *r.dataset_tag;  // first tag for a question wins
            any_tag = true;
        }
    }
    // records.size() == Q*M and no duplicates, so every pair is present
    if (any_tag) m.dataset_tags = std::move(tags);
    m.recompute_binary_flag();
    return m;
}

struct FilterReport {
    std::vector<std::string> universally_solved;   // every entry exactly 1
    std::vector<std::string> universally_failed;   // S(q) = 0
    std::vector<std::string> dangling_models;      // F(m) = 0 after filtering
    std::size_t retained_question_count = 0;
    double extreme_fraction = 0.0;
};

// Drops degenerate rows: S(q)=0 (failed by everyone) and rows where every
// entry is exactly 1 (solved by everyone; contributes nothing to any F(m)).
// The same rule serves binary and continuous matrices, which keeps the two
// paths consistent on {0,1} data. Retained order is preserved.
inline std::pair<ResponseMatrix, FilterReport> filter_extremes(const ResponseMatrix& m) {
    FilterReport fr;
    const std::size_t Q = m.q_count(), M = m.m_count();
    std::vector<std::size_t> keep;
    keep.reserve(Q);
    for (std::size_t q = 0; q < Q; ++q) {
        if (m.row_sum(q) == 0.0)
            fr.universally_failed.push_back(m.question_ids[q]);
        else if (m.row_all_ones(q))
            fr.universally_solved.push_back(m.question_ids[q]);
        else
            keep.push_back(q);
    }
    if (keep.empty())
        throw AllQuestionsFiltered("every question is universally solved or failed");
    fr.retained_question_count = keep.size();
    fr.extreme_fraction = static_cast<double>(Q - keep.size()) / static_cast<double>(Q);

    ResponseMatrix out;
    out.model_ids = m.model_ids;
    out.question_ids.reserve(keep.size());
    out.values.reserve(keep.size() * M);
    if (m.has_tags()) out.dataset_tags.reserve(keep.size());
    for (std::size_t q : keep) {
        out.question_ids.push_back(m.question_ids[q]);
        if (m.has_tags()) out.dataset_tags.push_back(m.dataset_tags[q]);
        const double* row = m.values.data() + q * M;
        out.values.insert(out.values.end(), row, row + M);
    }
    out.recompute_binary_flag();

    // F(m) over retained rows; dangling means the model failed nothing
    for (std::size_t j = 0; j < M; ++j) {
        double f = 0.0;
        for (std::size_t q = 0; q < keep.size(); ++q) f += 1.0 - out.at(q, j);
        if (f == 0.0) fr.dangling_models.push_back(m.model_ids[j]);
    }
    return {std::move(out), std::move(fr)};
}

// The pair of row-stochastic operators, stored question-major:
//   P_{Q->M} row q: models solving q, each weighted A(q,m)/S(q).
//   P_{M->Q} is kept as its transpose (per-question list of failing models,
//   entry weight (1-A(q,m))/F(m)) so both propagation passes stream rows.
// Binary matrices store indices only; weights are the uniform 1/S(q) and
// 1/F(m), recovered from solver_totals / failure_totals.
struct TransitionSystem {
    std::size_t q_count = 0;                    // retained questions Q'
    std::size_t m_count = 0;
    bool is_binary = true;
    std::vector<std::string> retained_question_ids;
    std::vector<std::string> model_ids;
    std::vector<double> solver_totals;          // S(q), length Q'
    std::vector<double> failure_totals;         // F(m), length M
    std::vector<std::uint8_t> dangling;         // 1 if p_mq row was patched uniform
    std::vector<std::string> dangling_models;

    std::vector<std::size_t> pqm_offsets;       // Q'+1
    std::vector<std::uint32_t> pqm_cols;        // model index per solved entry
    std::vector<double> pqm_vals;               // continuous only: A/S per entry

    std::vector<std::size_t> pmq_t_offsets;     // Q'+1 (transpose of P_{M->Q})
    std::vector<std::uint32_t> pmq_t_cols;      // model index per failed entry
    std::vector<double> pmq_t_vals;             // continuous only: (1-A)/F per entry

    // Row sums of the conceptual operators, for invariant checks.
    double pqm_row_sum(std::size_t q) const {
        if (is_binary)
            return static_cast<double>(pqm_offsets[q + 1] - pqm_offsets[q]) / solver_totals[q];
        double s = 0.0;
        for (std::size_t e = pqm_offsets[q]; e < pqm_offsets[q + 1]; ++e) s += pqm_vals[e];
        return s;
    }
    std::vector<double> pmq_row_sums() const {
        std::vector<double> sums(m_count, 0.0);
        for (std::size_t q = 0; q < q_count; ++q)
            for (std::size_t e = pmq_t_offsets[q]; e < pmq_t_offsets[q + 1]; ++e) {
                const std::uint32_t j = pmq_t_cols[e];
                sums[j] += is_binary ? 1.0 / failure_totals[j] : pmq_t_vals[e];
            }
        for (std::size_t j = 0; j < m_count; ++j)
            if (dangling[j]) sums[j] = 1.0;  // patched row is uniform over Q'
        return sums;
    }
};

// Builds both operators from an already-filtered matrix. Dangling models
// (F(m)=0) get a uniform row, mirroring PageRank dangling-node handling.
inline TransitionSystem build_transitions(const ResponseMatrix& m) {
    const std::size_t Q = m.q_count(), M = m.m_count();
    TransitionSystem ts;
    ts.q_count = Q;
    ts.m_count = M;
    ts.is_binary = m.is_binary;
    ts.retained_question_ids = m.question_ids;
    ts.model_ids = m.model_ids;
    ts.solver_totals.resize(Q);
    ts.failure_totals.assign(M, 0.0);
    ts.dangling.assign(M, 0);

    std::size_t solved_entries = 0, failed_entries = 0;
    for (std::size_t q = 0; q < Q; ++q) {
        double s = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            const double v = m.at(q, j);
            s += v;
            ts.failure_totals[j] += 1.0 - v;
            if (v > 0.0) ++solved_entries;
            if (v < 1.0) ++failed_entries;
        }
        if (s == 0.0)
            throw UnfilteredInput("question '" + m.question_ids[q] + "' has S(q)=0; filter first");
        ts.solver_totals[q] = s;
    }
    for (std::size_t j = 0; j < M; ++j)
        if (ts.failure_totals[j] == 0.0) {
            ts.dangling[j] = 1;
            ts.dangling_models.push_back(m.model_ids[j]);
        }

    ts.pqm_offsets.resize(Q + 1);
    ts.pqm_cols.reserve(solved_entries);
    ts.pmq_t_offsets.resize(Q + 1);
    ts.pmq_t_cols.reserve(failed_entries);
    if (!ts.is_binary) {
        ts.pqm_vals.reserve(solved_entries);
        ts.pmq_t_vals.reserve(failed_entries);
    }
    for (std::size_t q = 0; q < Q; ++q) {
        ts.pqm_offsets[q] = ts.pqm_cols.size();
        ts.pmq_t_offsets[q] = ts.pmq_t_cols.size();
        for (std::size_t j = 0; j < M; ++j) {
            const double v = m.at(q, j);
            if (v > 0.0) {
                ts.pqm_cols.push_back(static_cast<std::uint32_t>(j));
                if (!ts.is_binary) ts.pqm_vals.push_back(v / ts.solver_totals[q]);
            }
            if (v < 1.0 && !ts.dangling[j]) {
                ts.pmq_t_cols.push_back(static_cast<std::uint32_t>(j));
                if (!ts.is_binary) ts.pmq_t_vals.push_back((1.0 - v) / ts.failure_totals[j]);
            }
        }
    }
    ts.pqm_offsets[Q] = ts.pqm_cols.size();
    ts.pmq_t_offsets[Q] = ts.pmq_t_cols.size();
    return ts;
}

}  // namespace rankprop
