#include "qsumm/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qsumm/errors.hpp"
#include "qsumm/metrics.hpp"
#include "qsumm/rng.hpp"
#include "qsumm/rouge.hpp"

namespace qsumm {

namespace {

using nlohmann::json;

std::string fmt_real(Real x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string algorithm_name(AnsatzKind kind) {
    switch (kind) {
        case AnsatzKind::QAOA: return "qaoa";
        case AnsatzKind::XY_QAOA: return "xy-qaoa";
        case AnsatzKind::LVQE: return "lvqe";
    }
    return "?";
}

BasisIndex parse_bitstring(const std::string& s, int n_qubits) {
    if (static_cast<int>(s.size()) != n_qubits)
        throw Error(Errc::parse_error, "bitstring '" + s + "' does not have length " +
                                           std::to_string(n_qubits));
    BasisIndex x = 0;
    for (int i = 0; i < n_qubits; ++i) {
        const char c = s[static_cast<std::size_t>(i)];
        if (c == '1')
            x |= BasisIndex{1} << i;
        else if (c != '0')
            throw Error(Errc::parse_error, "bitstring '" + s + "' has non-binary characters");
    }
    return x;
}

std::vector<Real> json_real_array(const json& a) {
    std::vector<Real> out;
    out.reserve(a.size());
    for (const auto& v : a) out.push_back(v.get<Real>());
    return out;
}

RealVector to_vector(const std::vector<Real>& v) {
    RealVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

json vector_json(const RealVector& v) {
    return json(std::vector<Real>(v.begin(), v.end()));
}

json metrics_json(const MetricReport& metrics) {
    json j;
    j["approx_ratio"] = metrics.approx_ratio.has_value() ? json(*metrics.approx_ratio) : json();
    j["degenerate_range"] = metrics.degenerate_range;
    j["icp"] = metrics.icp;
    j["f_observed"] = metrics.f_observed.has_value() ? json(*metrics.f_observed) : json();
    json hist = json::object();
    for (const auto& [d, p] : metrics.hamming_hist) hist[std::to_string(d)] = p;
    j["hamming_hist"] = std::move(hist);
    return j;
}

json gate_stats_json(const GateStats& stats) {
    json j;
    j["two_qubit_count"] = stats.two_qubit_count;
    j["two_qubit_depth"] = stats.two_qubit_depth;
    j["convention"] = stats.convention == GateCountConvention::CnotDecomposed
                          ? "cnot-decomposed"
                          : "native-2q";
    return j;
}

json oracle_json(const OracleResult& oracle, int n_qubits) {
    json j;
    j["f_min"] = oracle.f_min;
    j["f_max"] = oracle.f_max;
    j["argmax"] = format_bitstring(oracle.argmax, n_qubits);
    j["feasible_count"] = oracle.feasible_count;
    j["mean_feasible"] = oracle.mean_feasible;
    return j;
}

json grid_point_json(const GridPoint& point) {
    json j;
    j["gamma"] = point.gamma;
    j["beta"] = point.beta;
    j["approx_ratio"] = point.ar_defined ? json(point.approx_ratio) : json();
    j["icp"] = point.icp;
    j["penalized_expectation"] = point.penalized_expectation;
    return j;
}

ObjectiveKind default_phase_objective(AnsatzKind kind) {
    // XY-QAOA evolves inside the constraint subspace, so penalties are
    // redundant there; the unconstrained ansaetze encode the penalized form.
    return kind == AnsatzKind::XY_QAOA ? ObjectiveKind::Raw : ObjectiveKind::Penalized;
}

struct SearchOutcome {
    AnsatzParams params;
    json search_info;
};

std::function<Real(const RealVector&)> make_angle_objective(
    const ProblemInstance& instance, const SolveConfig& config, AnsatzKind kind,
    const DiagonalObjective& diag, ObjectiveKind objective, const Statevector* dicke_state) {
    const int p = config.p;
    if (kind == AnsatzKind::LVQE) {
        const int n = instance.n;
        return [&instance, &diag, objective, n, p](const RealVector& thetas) {
            const Circuit circuit = build_lvqe(n, p, thetas);
            const Statevector state = run_circuit(circuit, &diag);
            return expectation_diagonal(state, diag.of(objective));
        };
    }
    if (kind == AnsatzKind::XY_QAOA) {
        const MixerTopology topology = config.mixer_topology;
        const int n = instance.n;
        return [&diag, dicke_state, objective, topology, n, p](const RealVector& x) {
            Statevector state = *dicke_state;  // Dicke prep is parameter-free
            for (int layer = 0; layer < p; ++layer) {
                apply_phase_operator(state, diag.of(objective), x[layer]);
                for (int k = 0; k + 1 < n; ++k)
                    apply(state, Gate{GateKind::RXXplusYY, k, k + 1, x[p + layer]});
                if (topology == MixerTopology::Ring && n > 2)
                    apply(state, Gate{GateKind::RXXplusYY, n - 1, 0, x[p + layer]});
            }
            return expectation_diagonal(state, diag.of(objective));
        };
    }
    return [&instance, &diag, objective, p](const RealVector& x) {
        AnsatzParams params;
        params.kind = AnsatzKind::QAOA;
        params.p = p;
        params.gammas = x.head(p);
        params.betas = x.tail(p);
        const Circuit circuit = build_qaoa(instance, params, objective);
        const Statevector state = run_circuit(circuit, &diag);
        return expectation_diagonal(state, diag.of(objective));
    };
}

SearchOutcome search_parameters(const ProblemInstance& instance, const SolveConfig& config,
                                const DiagonalObjective& diag, const OracleResult& oracle,
                                ObjectiveKind objective) {
    SearchOutcome outcome;
    outcome.params.kind = config.algorithm;
    outcome.params.p = config.p;

    if (config.params_path) {
        std::ifstream in(*config.params_path);
        if (!in) throw Error(Errc::io_error, "cannot open params file " + *config.params_path);
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw Error(Errc::parse_error, "params file: " + std::string(e.what()));
        }
        if (config.algorithm == AnsatzKind::LVQE) {
            if (!doc.contains("thetas"))
                throw Error(Errc::param_mismatch, "params file needs a 'thetas' array");
            outcome.params.thetas = to_vector(json_real_array(doc["thetas"]));
        } else {
            if (!doc.contains("gammas") || !doc.contains("betas"))
                throw Error(Errc::param_mismatch, "params file needs 'gammas' and 'betas' arrays");
            outcome.params.gammas = to_vector(json_real_array(doc["gammas"]));
            outcome.params.betas = to_vector(json_real_array(doc["betas"]));
        }
        outcome.search_info["method"] = "explicit";
        outcome.search_info["params_path"] = *config.params_path;
        return outcome;
    }

    constexpr Real pi = std::numbers::pi_v<Real>;

    if (config.algorithm == AnsatzKind::QAOA && config.p == 1) {
        GridSearchConfig grid_config;
        grid_config.evaluation =
            config.grid_sampled ? GridEvaluation::Sampled : GridEvaluation::Exact;
        grid_config.shots = config.grid_shots;
        grid_config.seed = derive_stream(config.seed, 0x67726964);  // grid stream
        grid_config.threads = config.threads;
        grid_config.phase_objective = objective;
        const auto points = grid_search_qaoa(instance, config.grid_gamma.values(),
                                             config.grid_beta.values(), grid_config, &oracle);
        const GridPoint chosen = select_qaoa_params(points, config.icp_threshold);
        outcome.params.gammas = RealVector::Constant(1, chosen.gamma);
        outcome.params.betas = RealVector::Constant(1, chosen.beta);
        outcome.search_info["method"] = "grid+threshold";
        outcome.search_info["grid_points"] = points.size();
        outcome.search_info["icp_threshold"] = config.icp_threshold;
        outcome.search_info["grid_evaluation"] = config.grid_sampled ? "sampled" : "exact";
        outcome.search_info["selected"] = grid_point_json(chosen);
        return outcome;
    }

    // Multistart local optimization of the expectation (penalized objective
    // for the unconstrained ansaetze, raw inside the constrained subspace).
    Statevector dicke_state;
    const Statevector* dicke_ptr = nullptr;
    if (config.algorithm == AnsatzKind::XY_QAOA) {
        dicke_state = run_circuit(build_dicke(instance.n, instance.m));
        dicke_ptr = &dicke_state;
    }
    const auto objective_fn =
        make_angle_objective(instance, config, config.algorithm, diag, objective, dicke_ptr);

    std::vector<ParamRange> ranges;
    if (config.algorithm == AnsatzKind::LVQE) {
        const int dim = lvqe_param_count(instance.n, config.p);
        ranges.assign(static_cast<std::size_t>(dim), ParamRange{-pi, pi});
    } else {
        ranges.assign(static_cast<std::size_t>(2 * config.p), ParamRange{0.0, pi});
    }
    const int default_starts =
        config.algorithm == AnsatzKind::LVQE ? kDefaultLvqeStarts : kDefaultXyStarts;
    const int n_starts = config.starts.value_or(default_starts);
    const std::int64_t budget = config.budget_per_start.value_or(
        std::max<std::int64_t>(400, 150 * static_cast<std::int64_t>(ranges.size())));
    const OptimizationRun run =
        multistart(objective_fn, n_starts, ranges, derive_stream(config.seed, 0x6d756c74),
                   budget, config.threads);

    if (config.algorithm == AnsatzKind::LVQE) {
        outcome.params.thetas = run.best_params;
    } else {
        outcome.params.gammas = run.best_params.head(config.p);
        outcome.params.betas = run.best_params.tail(config.p);
    }
    outcome.search_info["method"] = "multistart";
    outcome.search_info["n_starts"] = n_starts;
    outcome.search_info["budget_per_start"] = budget;
    outcome.search_info["evaluations"] = run.evaluations;
    outcome.search_info["best_value"] = run.best_value;
    return outcome;
}

}  // namespace

std::vector<Real> GridAxis::values() const {
    if (count < 1) throw Error(Errc::parse_error, "grid axis needs at least one point");
    std::vector<Real> v(static_cast<std::size_t>(count));
    if (count == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < count; ++i)
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<Real>(i) / (count - 1);
    return v;
}

GridAxis GridAxis::parse(const std::string& spec) {
    GridAxis axis;
    const auto first = spec.find(':');
    const auto second = spec.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw Error(Errc::parse_error, "grid spec '" + spec + "' is not lo:hi:count");
    try {
        axis.lo = std::stod(spec.substr(0, first));
        axis.hi = std::stod(spec.substr(first + 1, second - first - 1));
        axis.count = std::stoi(spec.substr(second + 1));
    } catch (const std::exception&) {
        throw Error(Errc::parse_error, "grid spec '" + spec + "' is not lo:hi:count");
    }
    if (axis.count < 1)
        throw Error(Errc::parse_error, "grid spec '" + spec + "' needs a positive count");
    return axis;
}

GridAxis GridAxis::default_angle_axis() { return GridAxis{0.0, std::numbers::pi_v<Real>, 50}; }

std::optional<NoiseModel> NoiseConfig::model() const {
    switch (kind) {
        case Kind::None: return std::nullopt;
        case Kind::H1: return NoiseModel::h1_defaults();
        case Kind::Custom: return NoiseModel{p1, p2, p_spam};
    }
    return std::nullopt;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write " + path);
    out << contents;
}

nlohmann::json run_ingest(const IngestConfig& config) {
    const std::string text = read_text_file(config.article_path);
    const SentenceCorpus corpus = split_sentences(text);

    EmbeddingSet embeddings;
    std::vector<int> tf_fallback;
    if (config.embeddings_path) {
        embeddings = load_embeddings(*config.embeddings_path);
        check_embedding_count(embeddings, corpus);
    } else {
        FallbackEmbedding fallback = fallback_embedding(corpus, config.idf_norm);
        embeddings = std::move(fallback.embeddings);
        tf_fallback = std::move(fallback.tf_fallback_sentences);
    }

    const RealVector mu = centrality_vector(corpus, config.idf_norm);
    const RealMatrix beta = similarity_matrix(embeddings);
    const ProblemInstance instance = build_instance(mu, beta, config.lambda, config.m);
    save_problem(instance, config.out_path, &tf_fallback);

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["n"] = instance.n;
    doc["m"] = instance.m;
    doc["lambda"] = instance.lambda;
    doc["gamma"] = instance.gamma;
    doc["embeddings"] = config.embeddings_path ? json(*config.embeddings_path) : json("tf-idf fallback");
    doc["tf_fallback_sentences"] = tf_fallback;
    doc["out"] = config.out_path;
    return doc;
}

nlohmann::json run_solve(const SolveConfig& config) {
    const ProblemInstance instance = load_problem(config.problem_path);
    if (instance.n > kMaxQubits)
        throw Error(Errc::too_many_qubits, "run_solve: instance exceeds " +
                                               std::to_string(kMaxQubits) + " qubits");
    if (config.p < 1) throw Error(Errc::param_mismatch, "run_solve: p must be >= 1");
    const auto noise = config.noise.model();
    if (config.exact && noise.has_value())
        throw Error(Errc::param_mismatch, "run_solve: --exact is noiseless only");

    const OracleResult oracle = brute_force(instance);
    const DiagonalObjective diag = build_diagonal_objective(instance);
    const ObjectiveKind objective =
        config.phase_objective.value_or(default_phase_objective(config.algorithm));

    SearchOutcome search = search_parameters(instance, config, diag, oracle, objective);

    Circuit circuit;
    switch (config.algorithm) {
        case AnsatzKind::QAOA:
            circuit = build_qaoa(instance, search.params, objective);
            break;
        case AnsatzKind::XY_QAOA:
            circuit = build_xy_qaoa(instance, search.params, config.mixer_topology, objective);
            break;
        case AnsatzKind::LVQE:
            circuit = build_lvqe(instance.n, config.p, search.params.thetas);
            break;
    }
    if (config.dump_circuit_path) write_text_file(*config.dump_circuit_path, dump_circuit(circuit));

    json report;
    report["schema_version"] = kSchemaVersion;
    report["algorithm"] = algorithm_name(config.algorithm);
    report["problem"] = config.problem_path;
    report["n"] = instance.n;
    report["m"] = instance.m;
    report["p"] = config.p;
    report["seed"] = config.seed;
    report["objective"] = objective == ObjectiveKind::Raw ? "raw" : "penalized";
    if (config.algorithm == AnsatzKind::XY_QAOA)
        report["mixer_topology"] =
            config.mixer_topology == MixerTopology::Path ? "path" : "ring";
    json params;
    if (config.algorithm == AnsatzKind::LVQE) {
        params["thetas"] = vector_json(search.params.thetas);
    } else {
        params["gammas"] = vector_json(search.params.gammas);
        params["betas"] = vector_json(search.params.betas);
    }
    report["params"] = std::move(params);
    report["param_search"] = std::move(search.search_info);
    report["gate_stats"] = gate_stats_json(gate_stats(circuit, GateCountConvention::CnotDecomposed));
    if (config.algorithm == AnsatzKind::XY_QAOA)
        report["initial_state_gate_stats"] = gate_stats_json(
            gate_stats(build_dicke(instance.n, instance.m), GateCountConvention::CnotDecomposed));
    report["oracle"] = oracle_json(oracle, instance.n);
    report["noise"] = json();
    if (noise) {
        json nj;
        nj["p1"] = noise->p1;
        nj["p2"] = noise->p2;
        nj["p_spam"] = noise->p_spam;
        report["noise"] = std::move(nj);
    }

    if (config.exact) {
        const Statevector state = run_circuit(circuit, &diag);
        report["mode"] = "exact";
        report["shots"] = 0;
        report["metrics"] = metrics_json(compute_metrics(state, instance, oracle));
        json distribution = json::object();
        for (Eigen::Index x = 0; x < state.dim(); ++x) {
            if (hamming_weight(static_cast<BasisIndex>(x)) != instance.m) continue;
            const Real p = std::norm(state.amps[x]);
            if (p > 0.0)
                distribution[format_bitstring(static_cast<BasisIndex>(x), instance.n)] = p;
        }
        report["distribution"] = std::move(distribution);
    } else {
        const NoiseModel model = noise.value_or(NoiseModel{});
        const SampleSet samples =
            run_noisy(circuit, model, config.shots, config.seed, &diag, config.threads);
        report["mode"] = "sampled";
        report["shots"] = config.shots;
        report["metrics"] = metrics_json(compute_metrics(samples, instance, oracle));
        json counts = json::object();
        for (const auto& [x, count] : samples.counts)
            counts[format_bitstring(x, instance.n)] = count;
        json sj;
        sj["shots"] = samples.shots;
        sj["counts"] = std::move(counts);
        report["samples"] = std::move(sj);
    }
    return report;
}

nlohmann::json run_pareto(const ParetoConfig& config, std::string* csv_out) {
    const ProblemInstance instance = load_problem(config.problem_path);
    if (instance.n > kMaxQubits)
        throw Error(Errc::too_many_qubits, "run_pareto: instance exceeds " +
                                               std::to_string(kMaxQubits) + " qubits");
    const OracleResult oracle = brute_force(instance);
    GridSearchConfig grid_config;
    grid_config.evaluation = config.sampled ? GridEvaluation::Sampled : GridEvaluation::Exact;
    grid_config.shots = config.shots;
    grid_config.seed = derive_stream(config.seed, 0x67726964);
    grid_config.threads = config.threads;
    const auto points = grid_search_qaoa(instance, config.grid_gamma.values(),
                                         config.grid_beta.values(), grid_config, &oracle);

    std::ostringstream csv;
    csv << "gamma,beta,approx_ratio,icp\n";
    for (const auto& point : points) {
        csv << fmt_real(point.gamma) << "," << fmt_real(point.beta) << ","
            << (point.ar_defined ? fmt_real(point.approx_ratio) : "nan") << ","
            << fmt_real(point.icp) << "\n";
    }
    if (!config.csv_path.empty()) write_text_file(config.csv_path, csv.str());
    if (csv_out) *csv_out = csv.str();

    const auto frontier = pareto_frontier(points);
    const GridPoint* penalized_best = nullptr;
    for (const auto& point : points)
        if (!penalized_best || point.penalized_expectation > penalized_best->penalized_expectation)
            penalized_best = &point;

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["problem"] = config.problem_path;
    doc["n_points"] = points.size();
    json frontier_json = json::array();
    for (const auto& point : frontier) frontier_json.push_back(grid_point_json(point));
    doc["frontier"] = std::move(frontier_json);
    doc["penalized_argmax"] = grid_point_json(*penalized_best);
    if (!config.csv_path.empty()) doc["csv"] = config.csv_path;
    return doc;
}

nlohmann::json run_rouge(const RougeConfig& config) {
    json report;
    try {
        std::ifstream in(config.report_path);
        if (!in) throw Error(Errc::io_error, "cannot open " + config.report_path);
        in >> report;
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, "report file: " + std::string(e.what()));
    }
    const SentenceCorpus corpus = split_sentences(read_text_file(config.article_path));
    const TokenList reference = tokenize(read_text_file(config.reference_path));

    int n = 0;
    int m = 0;
    std::map<BasisIndex, Real> distribution;
    try {
        n = report.at("n").get<int>();
        m = report.at("m").get<int>();
        if (report.contains("samples")) {
            for (const auto& [key, value] : report.at("samples").at("counts").items())
                distribution[parse_bitstring(key, n)] = value.get<Real>();
        } else if (report.contains("distribution")) {
            for (const auto& [key, value] : report.at("distribution").items())
                distribution[parse_bitstring(key, n)] = value.get<Real>();
        } else {
            throw Error(Errc::parse_error, "report has neither samples nor distribution");
        }
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, "report file: " + std::string(e.what()));
    }
    if (corpus.size() != n)
        throw Error(Errc::count_mismatch, "article has " + std::to_string(corpus.size()) +
                                              " sentences but the report says " +
                                              std::to_string(n));

    const RougeScores scores = weighted_rouge(distribution, corpus, m, reference);
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["rouge1_f"] = scores.rouge1_f;
    doc["rouge2_f"] = scores.rouge2_f;
    doc["rougeL_f"] = scores.rougeL_f;
    return doc;
}

std::string run_sweep_lambda(const SweepLambdaConfig& config) {
    const SentenceCorpus corpus = split_sentences(read_text_file(config.article_path));
    EmbeddingSet embeddings;
    if (config.embeddings_path) {
        embeddings = load_embeddings(*config.embeddings_path);
        check_embedding_count(embeddings, corpus);
    } else {
        embeddings = fallback_embedding(corpus, config.idf_norm).embeddings;
    }
    const RealVector mu = centrality_vector(corpus, config.idf_norm);
    const RealMatrix beta = similarity_matrix(embeddings);
    const TokenList reference = tokenize(read_text_file(config.reference_path));

    const auto curve =
        lambda_sweep(corpus, mu, beta, reference, config.lambda_grid.values(), config.m);
    std::ostringstream csv;
    csv << "lambda,rouge1_f,rouge2_f,rougeL_f\n";
    for (const auto& point : curve) {
        csv << fmt_real(point.lambda) << "," << fmt_real(point.scores.rouge1_f) << ","
            << fmt_real(point.scores.rouge2_f) << "," << fmt_real(point.scores.rougeL_f) << "\n";
    }
    if (!config.csv_path.empty()) write_text_file(config.csv_path, csv.str());
    return csv.str();
}

}  // namespace qsumm
