#pragma once

#include "heatmom/discretization.hpp"
#include "heatmom/measures.hpp"
#include "heatmom/metrics.hpp"
#include "heatmom/quadrature.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatmom {

/// Invalid or inconsistent configuration; carries every problem found.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Flat key/value text with [section] headers, '#'/';' comments, and
/// repeatable keys. Order preserved.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback = "") const;
    std::vector<std::string> get_all(const std::string& section, const std::string& key) const;

private:
    struct Entry {
        std::string section;
        std::string key;
        std::string value;
    };
    std::vector<Entry> entries_;
};

struct ExperimentConfig {
    int dimension = 1;
    double R = 5.0;
    std::vector<double> T_list;
    std::vector<int> k_list;
    bool auto_k = false;
    double jump_ratio = 5.0;

    std::optional<AtomicMeasure> truth;
    std::string readings_csv;  // required when truth is absent

    QuadratureKind quad_method = QuadratureKind::gauss_hermite;
    int quad_n = 100;
    double quad_L = 50.0;
    std::int64_t sensor_budget = kDefaultSensorBudget;

    MeshSpec mesh;
    SimplexOptions solver;

    bool cluster_enabled = false;
    double cluster_threshold = 0.02;
    GroundMetric ground_metric = GroundMetric::euclidean;

    double noise_level = 0.0;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
};

/// Parse and validate; throws ConfigError listing every violation.
ExperimentConfig parse_experiment_config(const std::string& path);
ExperimentConfig experiment_config_from(const ConfigFile& file);

}  // namespace heatmom
