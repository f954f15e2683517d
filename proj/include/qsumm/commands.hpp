#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "qsumm/ansatz.hpp"
#include "qsumm/optimize.hpp"
#include "qsumm/statevector.hpp"
#include "qsumm/textprep.hpp"

namespace qsumm {

inline constexpr int kSchemaVersion = 1;

// Paper-protocol defaults: 2000 evaluation shots, 1000 grid shots, lambda
// 0.075, ICP threshold 0.06, multistart counts 20 (L-VQE) / 10 (XY-QAOA).
inline constexpr std::uint64_t kDefaultShots = 2000;
inline constexpr std::uint64_t kDefaultGridShots = 1000;
inline constexpr Real kDefaultIcpThreshold = 0.06;
inline constexpr int kDefaultLvqeStarts = 20;
inline constexpr int kDefaultXyStarts = 10;

struct GridAxis {
    Real lo = 0.0;
    Real hi = 0.0;
    int count = 1;

    std::vector<Real> values() const;
    static GridAxis parse(const std::string& spec);  // "lo:hi:count"
    static GridAxis default_angle_axis();            // 0:pi:50
};

struct IngestConfig {
    std::string article_path;
    std::optional<std::string> embeddings_path;
    Real lambda = kDefaultLambda;
    int m = 0;
    IdfNorm idf_norm = IdfNorm::UniqueWords;
    std::string out_path;
};

struct NoiseConfig {
    enum class Kind { None, H1, Custom } kind = Kind::None;
    Real p1 = 0.0;
    Real p2 = 0.0;
    Real p_spam = 0.0;

    std::optional<NoiseModel> model() const;
};

struct SolveConfig {
    std::string problem_path;
    AnsatzKind algorithm = AnsatzKind::QAOA;
    int p = 1;
    std::uint64_t shots = kDefaultShots;
    std::uint64_t seed = 0;
    NoiseConfig noise;
    bool exact = false;  // exact-distribution metrics instead of sampling (noiseless only)
    MixerTopology mixer_topology = MixerTopology::Path;
    std::optional<ObjectiveKind> phase_objective;  // default: penalized (QAOA/L-VQE), raw (XY)
    GridAxis grid_gamma = GridAxis::default_angle_axis();
    GridAxis grid_beta = GridAxis::default_angle_axis();
    std::uint64_t grid_shots = kDefaultGridShots;
    bool grid_sampled = false;  // grid metrics from 1000-shot sampling instead of the exact state
    Real icp_threshold = kDefaultIcpThreshold;
    std::optional<int> starts;
    std::optional<std::int64_t> budget_per_start;
    std::optional<std::string> params_path;  // explicit parameters, skips the search
    int threads = 1;
    std::optional<std::string> dump_circuit_path;
};

struct ParetoConfig {
    std::string problem_path;
    GridAxis grid_gamma = GridAxis::default_angle_axis();
    GridAxis grid_beta = GridAxis::default_angle_axis();
    bool sampled = false;
    std::uint64_t shots = kDefaultGridShots;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string csv_path;  // empty: stdout
};

struct RougeConfig {
    std::string report_path;
    std::string article_path;
    std::string reference_path;
};

struct SweepLambdaConfig {
    std::string article_path;
    std::optional<std::string> embeddings_path;
    std::string reference_path;
    int m = 0;
    GridAxis lambda_grid{0.0, 0.25, 26};
    IdfNorm idf_norm = IdfNorm::UniqueWords;
    std::string csv_path;  // empty: stdout
};

// Command entry points. Each returns the JSON document it would print; file
// side effects (problem file, CSV) happen inside.
nlohmann::json run_ingest(const IngestConfig& config);
nlohmann::json run_solve(const SolveConfig& config);
nlohmann::json run_pareto(const ParetoConfig& config, std::string* csv_out = nullptr);
nlohmann::json run_rouge(const RougeConfig& config);
std::string run_sweep_lambda(const SweepLambdaConfig& config);  // returns the CSV text

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace qsumm
