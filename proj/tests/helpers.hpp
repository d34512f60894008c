#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rankprop/response_matrix.hpp"
#include "rankprop/rng.hpp"

namespace testutil {

// Small literal matrices: ids q1..qN / m1..mM, tags optional.
inline rankprop::ResponseMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                          const std::vector<std::string>& tags = {}) {
    rankprop::ResponseMatrix m;
    const std::size_t q = rows.size();
    const std::size_t cols = q ? rows[0].size() : 0;
    for (std::size_t i = 0; i < q; ++i)
        m.question_ids.push_back("q" + std::to_string(i + 1));
    for (std::size_t j = 0; j < cols; ++j) m.model_ids.push_back("m" + std::to_string(j + 1));
    for (const auto& row : rows) m.values.insert(m.values.end(), row.begin(), row.end());
    m.dataset_tags = tags;
    m.recompute_binary_flag();
    return m;
}

// Two separately-dense question/model groups with no cross-group solves.
// On this family the per-sweep contraction rate is governed by alpha alone,
// so iteration counts at fixed (alpha, epsilon) do not drift with size.
inline rankprop::ResponseMatrix two_block(std::size_t q, std::size_t m, std::uint64_t seed,
                                          double frac = 0.4, double d1 = 0.45,
                                          double d2 = 0.55) {
    rankprop::ResponseMatrix out;
    const std::size_t q1 = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                        static_cast<double>(q) * frac));
    const std::size_t m1 = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                        static_cast<double>(m) * frac));
    for (std::size_t i = 0; i < q; ++i)
        out.question_ids.push_back("q" + std::to_string(i + 1));
    for (std::size_t j = 0; j < m; ++j) out.model_ids.push_back("m" + std::to_string(j + 1));
    out.values.assign(q * m, 0.0);
    rankprop::Rng rng(seed);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const bool in1 = i < q1 && j < m1;
            const bool in2 = i >= q1 && j >= m1;
            if (in1 || in2) out.at(i, j) = rng.uniform01() < (in1 ? d1 : d2) ? 1.0 : 0.0;
        }
    out.is_binary = true;
    return out;
}

}  // namespace testutil
