// rankprop: difficulty-aware ranking of questions and models from a
// correctness matrix, with baselines, robustness studies, synthetic data
// and a timing bench. Exit codes: 0 ok, 1 input/usage error, 2 the
// propagation hit max iterations without converging.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rankprop/analysis.hpp"
#include "rankprop/baselines.hpp"
#include "rankprop/io.hpp"
#include "rankprop/pipeline.hpp"
#include "rankprop/synth.hpp"

namespace {

using nlohmann::ordered_json;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw rankprop::ParseError("cannot open output file: " + out_path);
    out << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

rankprop::MatrixFormat input_format(const std::string& format) {
    return format == "jsonl" ? rankprop::MatrixFormat::Jsonl : rankprop::MatrixFormat::Csv;
}

rankprop::NormalizationMode parse_normalize(const std::string& s) {
    if (s == "max100") return rankprop::NormalizationMode::Max100;
    if (s == "minmax100") return rankprop::NormalizationMode::MinMax100;
    return rankprop::NormalizationMode::Raw;
}

std::pair<double, double> parse_tiers(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw rankprop::ParseError("--tiers expects two comma-separated bounds, got '" + s + "'");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw rankprop::ParseError("--tiers expects numeric bounds, got '" + s + "'");
    }
}

// Shared propagation / report settings.
struct CommonOpts {
    std::string input;
    std::string out_path;
    std::string format;  // "" = csv in / json out, "jsonl" = jsonl in, "csv" = csv in+out
    std::string normalize = "max100";
    std::string tiers = "33,67";
    double alpha = 0.85;
    double tolerance = 1e-10;
    std::size_t max_iters = 1000;
    bool continuous = false;
    bool timings = false;
    std::uint64_t seed = 0;

    rankprop::RankOptions rank_options() const {
        rankprop::RankOptions opt;
        opt.prop.alpha = alpha;
        opt.prop.epsilon = tolerance;
        opt.prop.max_iterations = max_iters;
        opt.normalization = parse_normalize(normalize);
        std::tie(opt.tier_a, opt.tier_b) = parse_tiers(tiers);
        opt.force_continuous = continuous;
        opt.seed = seed;
        opt.include_timings = timings;
        return opt;
    }
};

void add_propagation_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--alpha", o.alpha, "Damping factor in (0,1)")->capture_default_str();
    cmd->add_option("--tolerance", o.tolerance, "L1 convergence threshold")
        ->capture_default_str();
    cmd->add_option("--max-iters", o.max_iters, "Iteration cap")->capture_default_str();
}

void add_io_flags(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
    cmd->add_option("--out", o.out_path, "Write output to this path instead of stdout");
    if (with_format)
        cmd->add_option("--format", o.format, "csv (also emits CSV tables) or jsonl input")
            ->check(CLI::IsMember({"csv", "jsonl"}));
}

int run_rank_cmd(const CommonOpts& o) {
    const auto m = rankprop::read_matrix_file(o.input, input_format(o.format));
    const auto rep = rankprop::run_rank(m, o.rank_options());
    emit(o.format == "csv" ? rankprop::report_to_csv(rep) : dump(rankprop::report_to_json(rep)),
         o.out_path);
    return rep.trace.converged ? 0 : 2;
}

ordered_json score_table(const std::vector<std::string>& ids, const std::vector<double>& scores,
                         rankprop::NormalizationMode mode) {
    const auto rr = rankprop::rank_entries(ids, scores, mode);
    // report in input id order: score, normalized, rank per id
    std::unordered_map<std::string, const rankprop::RankEntry*> by_id;
    for (const auto& e : rr.entries) by_id.emplace(e.id, &e);
    ordered_json rows = ordered_json::array();
    for (const auto& id : ids) {
        const auto* e = by_id.at(id);
        rows.push_back({{"id", id},
                        {"score", e->raw_score},
                        {"normalized_score", e->normalized_score},
                        {"rank", e->rank},
                        {"tie_group", e->tie_group}});
    }
    return rows;
}

int run_baselines_cmd(const CommonOpts& o, const std::string& irt_kind) {
    const auto m = rankprop::read_matrix_file(o.input, input_format(o.format));
    m.validate();
    ordered_json j;
    j["command"] = "baselines";
    j["models"] = m.model_ids;

    const auto acc = rankprop::accuracy_scores(m);
    j["accuracy"] = score_table(m.model_ids, acc, rankprop::NormalizationMode::Raw);

    // untagged input is a single unnamed dataset; the weight cancels and
    // weighted accuracy equals plain accuracy
    const auto weighted = m.has_tags() ? rankprop::weighted_scores(m) : acc;
    j["weighted"] = score_table(m.model_ids, weighted, rankprop::NormalizationMode::Raw);

    if (m.is_binary) {
        const auto fails = rankprop::simple_rank_difficulty(m);
        const auto rr = rankprop::rank_entries(m.question_ids, fails,
                                               rankprop::NormalizationMode::Raw);
        std::unordered_map<std::string, const rankprop::RankEntry*> by_id;
        for (const auto& e : rr.entries) by_id.emplace(e.id, &e);
        ordered_json rows = ordered_json::array();
        for (const auto& id : m.question_ids) {
            const auto* e = by_id.at(id);
            rows.push_back(
                {{"id", id}, {"failures", e->raw_score}, {"rank", e->rank}});
        }
        j["simple_rank"] = std::move(rows);
    } else {
        j["simple_rank"] = nullptr;
    }

    if (irt_kind != "none") {
        rankprop::IRTConfig cfg;
        cfg.kind = irt_kind == "2pl" ? rankprop::IrtKind::TwoPL : rankprop::IrtKind::OnePL;
        const auto fit = rankprop::fit_irt(m, cfg, o.seed);
        const auto scores = rankprop::irt_ability_scores(fit);
        j["irt"] = {{"kind", irt_kind},
                    {"converged", fit.converged},
                    {"final_objective", fit.final_objective},
                    {"abilities",
                     score_table(m.model_ids, scores, rankprop::NormalizationMode::Raw)}};
    } else {
        j["irt"] = nullptr;
    }
    emit(dump(j), o.out_path);
    return 0;
}

int run_robustness_cmd(const CommonOpts& o, std::size_t k, std::size_t trials, bool exhaustive) {
    const auto m = rankprop::read_matrix_file(o.input, input_format(o.format));
    if (exhaustive) {
        if (k != 1) throw rankprop::InvalidK("--exhaustive implies k=1");
        trials = m.m_count();
    }
    rankprop::PropagationConfig cfg;
    cfg.alpha = o.alpha;
    cfg.epsilon = o.tolerance;
    cfg.max_iterations = o.max_iters;
    const auto rep = rankprop::model_removal_study(m, k, trials, cfg, o.seed);

    ordered_json j;
    j["command"] = "robustness";
    j["k"] = rep.k_removed;
    j["trials"] = rep.trials;
    j["leave_one_out"] = rep.leave_one_out;
    j["seed"] = o.seed;
    j["question_rho"] = {{"mean", rep.question_rho_mean},
                         {"sd", rep.question_rho_sd},
                         {"per_trial", rep.question_rhos}};
    j["model_rho"] = {{"mean", rep.model_rho_mean},
                      {"sd", rep.model_rho_sd},
                      {"per_trial", rep.model_rhos}};
    j["mean_questions_dropped"] = rep.mean_questions_dropped;
    j["removed"] = rep.removed;
    if (o.timings)
        j["timing"] = {{"mean_seconds", rep.mean_seconds},
                       {"full_seconds", rep.full_seconds},
                       {"time_reduction_pct", rep.time_reduction_pct}};
    emit(dump(j), o.out_path);
    return 0;
}

int run_dataset_loo_cmd(const CommonOpts& o) {
    const auto m = rankprop::read_matrix_file(o.input, input_format(o.format));
    rankprop::PropagationConfig cfg;
    cfg.alpha = o.alpha;
    cfg.epsilon = o.tolerance;
    cfg.max_iterations = o.max_iters;
    const auto rows = rankprop::dataset_removal_study(m, cfg);
    ordered_json j;
    j["command"] = "dataset_loo";
    auto& arr = j["rows"] = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back({{"dataset", r.dataset},
                       {"questions_held_out", r.questions_held_out},
                       {"model_rho", r.model_rho}});
    emit(dump(j), o.out_path);
    return 0;
}

int run_simulate_cmd(CommonOpts& o, const std::string& scenario, std::size_t q, std::size_t mm,
                     double density, const std::string& pool_kind, bool seed_given,
                     bool also_rank) {
    rankprop::ResponseMatrix m;
    if (scenario == "case_study") {
        rankprop::CaseStudySpec spec;
        if (seed_given) spec.seed = o.seed;
        m = rankprop::generate_case_study(spec);
    } else if (scenario == "bernoulli" || scenario == "rasch") {
        rankprop::SyntheticSpec spec;
        spec.q = q;
        spec.m = mm;
        spec.density = density;
        spec.seed = o.seed;
        m = scenario == "bernoulli" ? rankprop::generate_bernoulli(spec)
                                    : rankprop::generate_rasch(spec).matrix;
    } else {  // pools
        rankprop::PoolKind kind = rankprop::PoolKind::Mixed;
        if (pool_kind == "strong") kind = rankprop::PoolKind::HomogeneousStrong;
        else if (pool_kind == "weak") kind = rankprop::PoolKind::HomogeneousWeak;
        m = rankprop::generate_pool_scenario(kind, q, o.seed, mm);
    }

    std::ostringstream buf;
    if (o.format == "jsonl")
        rankprop::write_jsonl(buf, m);
    else
        rankprop::write_csv(buf, m);
    emit(buf.str(), o.out_path);

    if (also_rank) {
        auto opts = o.rank_options();
        const auto rep = rankprop::run_rank(m, opts);
        std::cout << dump(rankprop::report_to_json(rep));
        return rep.trace.converged ? 0 : 2;
    }
    return 0;
}

int run_bench_cmd(const CommonOpts& o, const std::string& sizes, double mem_cap_gb) {
    std::vector<std::pair<std::size_t, std::size_t>> rows;
    std::stringstream ss(sizes);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto x = tok.find('x');
        if (x == std::string::npos)
            throw rankprop::ParseError("--sizes expects QxM entries, got '" + tok + "'");
        try {
            rows.emplace_back(std::stoull(tok.substr(0, x)), std::stoull(tok.substr(x + 1)));
        } catch (const std::exception&) {
            throw rankprop::ParseError("--sizes expects numeric QxM entries, got '" + tok + "'");
        }
    }
    if (rows.empty()) throw rankprop::ParseError("--sizes lists no entries");

    rankprop::PropagationConfig cfg;
    cfg.alpha = o.alpha;
    cfg.epsilon = o.tolerance;
    cfg.max_iterations = o.max_iters;

    ordered_json j;
    j["command"] = "bench";
    j["config"] = {{"alpha", cfg.alpha}, {"epsilon", cfg.epsilon}, {"seed", o.seed}};
    auto& out_rows = j["rows"] = ordered_json::array();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto [Q, M] = rows[r];
        // dense doubles + one uint32 CSR entry per cell
        const double estimate = static_cast<double>(Q) * static_cast<double>(M) * 12.0;
        if (estimate > mem_cap_gb * 1e9)
            throw rankprop::OutOfMemoryGuard(
                std::to_string(Q) + "x" + std::to_string(M) + " needs ~" +
                rankprop::format_double(estimate / 1e9) + " GB, cap is " +
                rankprop::format_double(mem_cap_gb) + " GB");

        rankprop::SyntheticSpec spec;
        spec.q = Q;
        spec.m = M;
        spec.density = 0.5;
        spec.seed = rankprop::derive_seed(o.seed, r);
        auto m = rankprop::generate_bernoulli(spec);

        // At bench scale an all-ones or all-zeros row is essentially
        // impossible; skip the filter copy (it would double peak memory)
        // unless one actually occurs.
        bool extreme = false;
        for (std::size_t qq = 0; qq < Q && !extreme; ++qq) {
            const double s = m.row_sum(qq);
            extreme = (s == 0.0) || m.row_all_ones(qq);
        }
        rankprop::TransitionSystem ts;
        if (extreme) {
            auto [kept, fr] = rankprop::filter_extremes(m);
            m.values.clear();
            m.values.shrink_to_fit();
            ts = rankprop::build_transitions(kept);
        } else {
            ts = rankprop::build_transitions(m);
            m.values.clear();
            m.values.shrink_to_fit();
        }
        const auto [scores, trace] = rankprop::propagate(ts, cfg);

        ordered_json row;
        row["q"] = ts.q_count;
        row["m"] = ts.m_count;
        row["cells"] = static_cast<std::uint64_t>(Q) * static_cast<std::uint64_t>(M);
        row["iterations"] = trace.iterations;
        row["converged"] = trace.converged;
        if (o.timings) {
            double total = 0.0;
            for (double s : trace.per_iteration_seconds) total += s;
            row["total_seconds"] = total;
            row["avg_seconds_per_iteration"] =
                trace.iterations ? total / static_cast<double>(trace.iterations) : 0.0;
        }
        out_rows.push_back(std::move(row));
    }
    emit(dump(j), o.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Difficulty-aware ranking from correctness matrices"};
    app.require_subcommand(1);

    CommonOpts rank_o, base_o, rob_o, loo_o, sim_o, bench_o;

    auto* rank = app.add_subcommand("rank", "Rank questions and models by propagation");
    rank->add_option("input", rank_o.input, "Correctness matrix (CSV or JSONL)")->required();
    add_propagation_flags(rank, rank_o);
    rank->add_option("--normalize", rank_o.normalize, "Score scale")
        ->check(CLI::IsMember({"max100", "minmax100", "raw"}))
        ->capture_default_str();
    rank->add_flag("--continuous", rank_o.continuous,
                   "Force the continuous path even on {0,1} data");
    rank->add_option("--tiers", rank_o.tiers, "Difficulty tier bounds a,b")
        ->capture_default_str();
    rank->add_option("--seed", rank_o.seed, "Echoed in the report")->capture_default_str();
    rank->add_flag("--timings", rank_o.timings, "Include wall-clock fields (non-reproducible)");
    add_io_flags(rank, rank_o);

    std::string irt_kind = "none";
    auto* base = app.add_subcommand("baselines",
                                    "Accuracy, weighted accuracy, simple rank, optional IRT");
    base->add_option("input", base_o.input, "Correctness matrix (CSV or JSONL)")->required();
    base->add_option("--irt", irt_kind, "Also fit an IRT model")
        ->check(CLI::IsMember({"none", "1pl", "2pl"}))
        ->capture_default_str();
    base->add_option("--seed", base_o.seed, "IRT jitter seed")->capture_default_str();
    add_io_flags(base, base_o);

    std::size_t rob_k = 1, rob_trials = 10;
    bool exhaustive = false;
    auto* rob = app.add_subcommand("robustness", "Model-removal stability study");
    rob->add_option("input", rob_o.input, "Correctness matrix (CSV or JSONL)")->required();
    rob->add_option("--k", rob_k, "Models removed per trial")->capture_default_str();
    rob->add_option("--trials", rob_trials, "Number of seeded trials")->capture_default_str();
    rob->add_flag("--exhaustive", exhaustive, "k=1 leave-one-out over every model");
    rob->add_option("--seed", rob_o.seed, "Trial seed")->capture_default_str();
    add_propagation_flags(rob, rob_o);
    rob->add_flag("--timings", rob_o.timings, "Include wall-clock fields (non-reproducible)");
    add_io_flags(rob, rob_o);

    auto* loo = app.add_subcommand("dataset-loo", "Hold out each dataset once");
    loo->add_option("input", loo_o.input, "Correctness matrix (CSV or JSONL)")->required();
    add_propagation_flags(loo, loo_o);
    add_io_flags(loo, loo_o);

    std::string scenario, pool_kind = "mixed";
    std::size_t sim_q = 1000, sim_m = 20;
    double sim_density = 0.5;
    bool also_rank = false;
    auto* sim = app.add_subcommand("simulate", "Generate a synthetic correctness matrix");
    sim->add_option("--scenario", scenario, "case_study, bernoulli, rasch or pools")
        ->check(CLI::IsMember({"case_study", "bernoulli", "rasch", "pools"}))
        ->required();
    sim->add_option("--q", sim_q, "Questions")->capture_default_str();
    sim->add_option("--m", sim_m, "Models")->capture_default_str();
    sim->add_option("--density", sim_density, "Bernoulli success probability")
        ->capture_default_str();
    sim->add_option("--pool-kind", pool_kind, "strong, weak or mixed")
        ->check(CLI::IsMember({"strong", "weak", "mixed"}))
        ->capture_default_str();
    auto* sim_seed = sim->add_option("--seed", sim_o.seed, "Generator seed (case_study has a "
                                                          "pinned default)");
    sim->add_flag("--rank", also_rank, "Also rank the generated matrix (requires --out)");
    add_propagation_flags(sim, sim_o);
    add_io_flags(sim, sim_o);

    std::string sizes = "20000x50";
    double mem_cap_gb = 3.6;
    auto* bench = app.add_subcommand("bench", "Time propagation on Bernoulli matrices");
    bench->add_option("--sizes", sizes, "Comma-separated QxM list")->capture_default_str();
    bench->add_option("--seed", bench_o.seed, "Generator seed")->capture_default_str();
    bench->add_option("--mem-cap-gb", mem_cap_gb, "Refuse sizes whose estimate exceeds this")
        ->capture_default_str();
    add_propagation_flags(bench, bench_o);
    bench->add_flag("--timings", bench_o.timings,
                    "Include wall-clock columns (non-reproducible)");
    add_io_flags(bench, bench_o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rank->parsed()) return run_rank_cmd(rank_o);
        if (base->parsed()) return run_baselines_cmd(base_o, irt_kind);
        if (rob->parsed()) return run_robustness_cmd(rob_o, rob_k, rob_trials, exhaustive);
        if (loo->parsed()) return run_dataset_loo_cmd(loo_o);
        if (sim->parsed()) {
            if (also_rank && sim_o.out_path.empty())
                throw rankprop::ParseError("--rank requires --out for the matrix file");
            return run_simulate_cmd(sim_o, scenario, sim_q, sim_m, sim_density, pool_kind,
                                    sim_seed->count() > 0, also_rank);
        }
        return run_bench_cmd(bench_o, sizes, mem_cap_gb);
    } catch (const rankprop::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
