#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsumm/commands.hpp"
#include "qsumm/errors.hpp"

namespace {

using qsumm::AnsatzKind;
using qsumm::GridAxis;

void emit(const nlohmann::json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty() || out_path == "-")
        std::fputs(text.c_str(), stdout);
    else
        qsumm::write_text_file(out_path, text);
}

AnsatzKind parse_algorithm(const std::string& name) {
    if (name == "qaoa") return AnsatzKind::QAOA;
    if (name == "xy-qaoa") return AnsatzKind::XY_QAOA;
    if (name == "lvqe") return AnsatzKind::LVQE;
    throw qsumm::Error(qsumm::Errc::parse_error, "unknown algorithm '" + name + "'");
}

qsumm::IdfNorm parse_idf_norm(const std::string& name) {
    if (name == "words") return qsumm::IdfNorm::UniqueWords;
    if (name == "sentences") return qsumm::IdfNorm::Sentences;
    throw qsumm::Error(qsumm::Errc::parse_error, "unknown idf-n mode '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constrained quantum optimization toolkit for extractive summarization"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Build a problem file from an article");
    std::string ingest_article, ingest_embeddings, ingest_out, ingest_idf = "words";
    double ingest_lambda = qsumm::kDefaultLambda;
    int ingest_m = 0;
    ingest->add_option("--article", ingest_article, "UTF-8 plain text article")->required();
    ingest->add_option("--embeddings", ingest_embeddings,
                       "CSV embeddings, one sentence per line (default: tf-idf fallback)");
    ingest->add_option("--lambda", ingest_lambda, "redundancy weight (default 0.075)");
    ingest->add_option("--m", ingest_m, "summary length in sentences")->required();
    ingest->add_option("--idf-n", ingest_idf, "idf numerator: words|sentences");
    ingest->add_option("--out", ingest_out, "problem JSON output path")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Optimize parameters and report metrics");
    std::string solve_problem, solve_algorithm = "qaoa", solve_noise = "none";
    std::string solve_params, solve_out, solve_dump, solve_topology = "path", solve_objective;
    std::string solve_grid_gamma, solve_grid_beta;
    std::uint64_t solve_shots = qsumm::kDefaultShots, solve_seed = 0;
    std::uint64_t solve_grid_shots = qsumm::kDefaultGridShots;
    int solve_p = 1, solve_threads = 1, solve_starts = -1;
    long long solve_budget = -1;
    double solve_icp_threshold = qsumm::kDefaultIcpThreshold;
    double solve_p1 = 5e-5, solve_p2 = 3e-3, solve_pspam = 3e-3;
    bool solve_exact = false, solve_grid_sampled = false;
    solve->add_option("--problem", solve_problem, "problem JSON path")->required();
    solve->add_option("--algorithm", solve_algorithm, "qaoa|xy-qaoa|lvqe");
    solve->add_option("--p", solve_p, "ansatz layer count");
    solve->add_option("--shots", solve_shots, "evaluation shots (default 2000)");
    solve->add_option("--seed", solve_seed, "master seed for all randomness");
    solve->add_option("--noise", solve_noise, "none|h1|custom");
    solve->add_option("--p1", solve_p1, "custom one-qubit depolarizing probability");
    solve->add_option("--p2", solve_p2, "custom two-qubit depolarizing probability");
    solve->add_option("--pspam", solve_pspam, "custom readout flip probability");
    solve->add_flag("--exact", solve_exact, "exact-distribution metrics (noiseless only)");
    solve->add_option("--mixer-topology", solve_topology, "path|ring (XY mixer)");
    solve->add_option("--objective", solve_objective, "penalized|raw phase objective override");
    solve->add_option("--grid-gamma", solve_grid_gamma, "QAOA grid lo:hi:count (default 0:pi:50)");
    solve->add_option("--grid-beta", solve_grid_beta, "QAOA grid lo:hi:count (default 0:pi:50)");
    solve->add_option("--grid-shots", solve_grid_shots, "grid sampling shots (default 1000)");
    solve->add_flag("--grid-sampled", solve_grid_sampled,
                    "evaluate the grid by sampling instead of exactly");
    solve->add_option("--icp-threshold", solve_icp_threshold,
                      "grid selection ICP threshold (default 0.06)");
    solve->add_option("--starts", solve_starts, "multistart count (default 20 L-VQE, 10 XY)");
    solve->add_option("--budget", solve_budget, "objective evaluations per start");
    solve->add_option("--params", solve_params, "JSON file with explicit parameters");
    solve->add_option("--threads", solve_threads, "worker threads");
    solve->add_option("--dump-circuit", solve_dump, "write the circuit dump to this path");
    solve->add_option("--out", solve_out, "report output path (default stdout)");

    // pareto
    auto* pareto = app.add_subcommand("pareto", "QAOA grid search with Pareto frontier");
    std::string pareto_problem, pareto_csv, pareto_out;
    std::string pareto_grid_gamma, pareto_grid_beta;
    std::uint64_t pareto_shots = qsumm::kDefaultGridShots, pareto_seed = 0;
    int pareto_threads = 1;
    bool pareto_sampled = false;
    pareto->add_option("--problem", pareto_problem, "problem JSON path")->required();
    pareto->add_option("--grid-gamma", pareto_grid_gamma, "lo:hi:count (default 0:pi:50)");
    pareto->add_option("--grid-beta", pareto_grid_beta, "lo:hi:count (default 0:pi:50)");
    pareto->add_flag("--sampled", pareto_sampled, "evaluate by sampling (default exact)");
    pareto->add_option("--shots", pareto_shots, "sampling shots (default 1000)");
    pareto->add_option("--seed", pareto_seed, "sampling seed");
    pareto->add_option("--threads", pareto_threads, "worker threads");
    pareto->add_option("--csv", pareto_csv, "grid CSV output path (default stdout)");
    pareto->add_option("--out", pareto_out, "frontier JSON output path (default stdout)");

    // rouge
    auto* rouge = app.add_subcommand("rouge", "Distribution-weighted ROUGE of a solve report");
    std::string rouge_report, rouge_article, rouge_reference, rouge_out;
    rouge->add_option("--report", rouge_report, "solve report JSON")->required();
    rouge->add_option("--article", rouge_article, "article used for the problem")->required();
    rouge->add_option("--reference", rouge_reference, "reference summary text")->required();
    rouge->add_option("--out", rouge_out, "scores output path (default stdout)");

    // sweep-lambda
    auto* sweep = app.add_subcommand("sweep-lambda", "ROUGE of brute-force optima vs lambda");
    std::string sweep_article, sweep_embeddings, sweep_reference, sweep_csv, sweep_idf = "words";
    std::string sweep_grid;
    int sweep_m = 0;
    sweep->add_option("--article", sweep_article, "UTF-8 plain text article")->required();
    sweep->add_option("--embeddings", sweep_embeddings, "CSV embeddings (default fallback)");
    sweep->add_option("--reference", sweep_reference, "reference summary text")->required();
    sweep->add_option("--m", sweep_m, "summary length in sentences")->required();
    sweep->add_option("--lambda-grid", sweep_grid, "lo:hi:count (default 0:0.25:26)");
    sweep->add_option("--idf-n", sweep_idf, "idf numerator: words|sentences");
    sweep->add_option("--out", sweep_csv, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) {
            qsumm::IngestConfig config;
            config.article_path = ingest_article;
            if (!ingest_embeddings.empty()) config.embeddings_path = ingest_embeddings;
            config.lambda = ingest_lambda;
            config.m = ingest_m;
            config.idf_norm = parse_idf_norm(ingest_idf);
            config.out_path = ingest_out;
            emit(qsumm::run_ingest(config), "");
        } else if (solve->parsed()) {
            qsumm::SolveConfig config;
            config.problem_path = solve_problem;
            config.algorithm = parse_algorithm(solve_algorithm);
            config.p = solve_p;
            config.shots = solve_shots;
            config.seed = solve_seed;
            if (solve_noise == "none") {
                config.noise.kind = qsumm::NoiseConfig::Kind::None;
            } else if (solve_noise == "h1") {
                config.noise.kind = qsumm::NoiseConfig::Kind::H1;
            } else if (solve_noise == "custom") {
                config.noise.kind = qsumm::NoiseConfig::Kind::Custom;
                config.noise.p1 = solve_p1;
                config.noise.p2 = solve_p2;
                config.noise.p_spam = solve_pspam;
            } else {
                throw qsumm::Error(qsumm::Errc::parse_error,
                                   "unknown noise mode '" + solve_noise + "'");
            }
            config.exact = solve_exact;
            if (solve_topology == "path")
                config.mixer_topology = qsumm::MixerTopology::Path;
            else if (solve_topology == "ring")
                config.mixer_topology = qsumm::MixerTopology::Ring;
            else
                throw qsumm::Error(qsumm::Errc::parse_error,
                                   "unknown mixer topology '" + solve_topology + "'");
            if (!solve_objective.empty()) {
                if (solve_objective == "penalized")
                    config.phase_objective = qsumm::ObjectiveKind::Penalized;
                else if (solve_objective == "raw")
                    config.phase_objective = qsumm::ObjectiveKind::Raw;
                else
                    throw qsumm::Error(qsumm::Errc::parse_error,
                                       "unknown objective '" + solve_objective + "'");
            }
            if (!solve_grid_gamma.empty()) config.grid_gamma = GridAxis::parse(solve_grid_gamma);
            if (!solve_grid_beta.empty()) config.grid_beta = GridAxis::parse(solve_grid_beta);
            config.grid_shots = solve_grid_shots;
            config.grid_sampled = solve_grid_sampled;
            config.icp_threshold = solve_icp_threshold;
            if (solve_starts >= 0) config.starts = solve_starts;
            if (solve_budget >= 0) config.budget_per_start = solve_budget;
            if (!solve_params.empty()) config.params_path = solve_params;
            config.threads = solve_threads;
            if (!solve_dump.empty()) config.dump_circuit_path = solve_dump;
            emit(qsumm::run_solve(config), solve_out);
        } else if (pareto->parsed()) {
            qsumm::ParetoConfig config;
            config.problem_path = pareto_problem;
            if (!pareto_grid_gamma.empty()) config.grid_gamma = GridAxis::parse(pareto_grid_gamma);
            if (!pareto_grid_beta.empty()) config.grid_beta = GridAxis::parse(pareto_grid_beta);
            config.sampled = pareto_sampled;
            config.shots = pareto_shots;
            config.seed = pareto_seed;
            config.threads = pareto_threads;
            config.csv_path = pareto_csv;
            std::string csv;
            const auto doc = qsumm::run_pareto(config, &csv);
            if (pareto_csv.empty()) std::fputs(csv.c_str(), stdout);
            emit(doc, pareto_out);
        } else if (rouge->parsed()) {
            qsumm::RougeConfig config;
            config.report_path = rouge_report;
            config.article_path = rouge_article;
            config.reference_path = rouge_reference;
            emit(qsumm::run_rouge(config), rouge_out);
        } else if (sweep->parsed()) {
            qsumm::SweepLambdaConfig config;
            config.article_path = sweep_article;
            if (!sweep_embeddings.empty()) config.embeddings_path = sweep_embeddings;
            config.reference_path = sweep_reference;
            config.m = sweep_m;
            if (!sweep_grid.empty()) config.lambda_grid = GridAxis::parse(sweep_grid);
            config.idf_norm = parse_idf_norm(sweep_idf);
            config.csv_path = sweep_csv;
            const std::string csv = qsumm::run_sweep_lambda(config);
            if (sweep_csv.empty()) std::fputs(csv.c_str(), stdout);
        }
    } catch (const qsumm::Error& e) {
        std::cerr << qsumm::errc_name(e.code()) << ": " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
