#include "heatmom/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace heatmom {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::vector<std::string> tokens(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string token;
    while (ss >> token) out.push_back(token);
    return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&problems] {
          std::string joined = "configuration invalid:";
          for (const auto& p : problems) joined += "\n  - " + p;
          return joined;
      }()),
      problems_(std::move(problems)) {}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
    ConfigFile file;
    std::stringstream stream(text);
    std::string line;
    std::string section;
    int line_number = 0;
    std::vector<std::string> problems;
    while (std::getline(stream, line)) {
        ++line_number;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                problems.push_back(origin + ":" + std::to_string(line_number) + ": unterminated section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto equals = line.find('=');
        if (equals == std::string::npos) {
            problems.push_back(origin + ":" + std::to_string(line_number) + ": expected key = value");
            continue;
        }
        Entry entry;
        entry.section = section;
        entry.key = trim(line.substr(0, equals));
        entry.value = trim(line.substr(equals + 1));
        if (entry.key.empty()) {
            problems.push_back(origin + ":" + std::to_string(line_number) + ": empty key");
            continue;
        }
        file.entries_.push_back(std::move(entry));
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return file;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const Entry& e) { return e.section == section && e.key == key; });
}

std::string ConfigFile::get(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    for (const auto& e : entries_) {
        if (e.section == section && e.key == key) return e.value;
    }
    return fallback;
}

std::vector<std::string> ConfigFile::get_all(const std::string& section, const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.section == section && e.key == key) out.push_back(e.value);
    }
    return out;
}

namespace {

class Validator {
public:
    explicit Validator(const ConfigFile& file) : file_(file) {}

    double number(const std::string& section, const std::string& key, double fallback) {
        if (!file_.has(section, key)) return fallback;
        return parse_number(file_.get(section, key), where(section, key), fallback);
    }

    long long integer(const std::string& section, const std::string& key, long long fallback) {
        const double value = number(section, key, static_cast<double>(fallback));
        const long long rounded = static_cast<long long>(value);
        if (static_cast<double>(rounded) != value) {
            problems.push_back(where(section, key) + ": expected an integer, got '" +
                               file_.get(section, key) + "'");
            return fallback;
        }
        return rounded;
    }

    bool boolean(const std::string& section, const std::string& key, bool fallback) {
        if (!file_.has(section, key)) return fallback;
        const std::string value = file_.get(section, key);
        if (value == "true" || value == "on" || value == "yes" || value == "1") return true;
        if (value == "false" || value == "off" || value == "no" || value == "0") return false;
        problems.push_back(where(section, key) + ": expected a boolean, got '" + value + "'");
        return fallback;
    }

    double parse_number(const std::string& text, const std::string& location, double fallback) {
        try {
            std::size_t used = 0;
            const double value = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return value;
        } catch (const std::exception&) {
            problems.push_back(location + ": expected a number, got '" + text + "'");
            return fallback;
        }
    }

    std::string where(const std::string& section, const std::string& key) const {
        return section.empty() ? key : "[" + section + "] " + key;
    }

    const ConfigFile& file_;
    std::vector<std::string> problems;
};

}  // namespace

ExperimentConfig experiment_config_from(const ConfigFile& file) {
    Validator v(file);
    ExperimentConfig config;

    config.dimension = static_cast<int>(v.integer("", "dimension", 1));
    if (config.dimension < 1) v.problems.push_back("dimension must be >= 1");
    config.R = v.number("", "R", 5.0);
    if (!(config.R > 0.0)) v.problems.push_back("R must be positive");
    config.seed = static_cast<std::uint64_t>(v.integer("", "seed", 0));
    config.output_dir = file.get("", "output_dir", "out");

    for (const std::string& token : tokens(file.get("", "T", ""))) {
        const double T = v.parse_number(token, "T", 0.0);
        if (!(T > 0.0)) v.problems.push_back("T values must be positive, got '" + token + "'");
        config.T_list.push_back(T);
    }
    if (config.T_list.empty()) v.problems.push_back("at least one terminal time T is required");

    const bool has_single_k = file.has("", "k");
    const bool has_sweep = file.has("k_sweep", "max");
    if (has_single_k == has_sweep) {
        v.problems.push_back("exactly one of top-level 'k' or '[k_sweep] max' is required");
    } else if (has_single_k) {
        const int k = static_cast<int>(v.integer("", "k", 0));
        if (k < 0) v.problems.push_back("k must be >= 0");
        config.k_list.push_back(k);
    } else {
        const int k_max = static_cast<int>(v.integer("k_sweep", "max", 0));
        if (k_max < 0) v.problems.push_back("[k_sweep] max must be >= 0");
        for (int k = 0; k <= k_max; ++k) config.k_list.push_back(k);
        config.auto_k = v.boolean("k_sweep", "auto", false);
        config.jump_ratio = v.number("k_sweep", "jump_ratio", 5.0);
        if (!(config.jump_ratio > 1.0)) v.problems.push_back("[k_sweep] jump_ratio must exceed 1");
    }

    const auto atom_lines = file.get_all("truth", "atom");
    if (!atom_lines.empty()) {
        std::vector<Atom> atoms;
        for (const auto& line : atom_lines) {
            const auto parts = tokens(line);
            if (static_cast<int>(parts.size()) != config.dimension + 1) {
                v.problems.push_back("[truth] atom '" + line + "' needs " +
                                     std::to_string(config.dimension) + " coordinates and an amplitude");
                continue;
            }
            Atom atom;
            for (int j = 0; j < config.dimension; ++j) {
                atom.position.push_back(v.parse_number(parts[static_cast<std::size_t>(j)], "[truth] atom", 0.0));
            }
            atom.amplitude = v.parse_number(parts.back(), "[truth] atom", 0.0);
            atoms.push_back(std::move(atom));
        }
        if (v.problems.empty()) config.truth = AtomicMeasure(config.dimension, std::move(atoms));
    }
    config.readings_csv = file.get("truth", "readings", "");
    if (!config.truth && config.readings_csv.empty()) {
        v.problems.push_back("either [truth] atom entries or [truth] readings = <csv path> is required");
    }

    const std::string method = file.get("quadrature", "method", "gauss_hermite");
    if (method == "gauss_hermite") {
        config.quad_method = QuadratureKind::gauss_hermite;
    } else if (method == "uniform") {
        config.quad_method = QuadratureKind::uniform;
    } else {
        v.problems.push_back("[quadrature] method must be gauss_hermite or uniform, got '" + method + "'");
    }
    config.quad_n = static_cast<int>(v.integer("quadrature", "n", 100));
    if (config.quad_n < 1) v.problems.push_back("[quadrature] n must be >= 1");
    config.quad_L = v.number("quadrature", "L", 50.0);
    if (config.quad_method == QuadratureKind::uniform && !(config.quad_L > 0.0)) {
        v.problems.push_back("[quadrature] L must be positive for the uniform method");
    }
    config.sensor_budget = v.integer("quadrature", "sensor_budget", kDefaultSensorBudget);
    if (config.sensor_budget < 1) v.problems.push_back("[quadrature] sensor_budget must be >= 1");

    const std::string mesh_type = file.get("mesh", "type", "uniform");
    if (mesh_type == "uniform") {
        config.mesh.kind = MeshKind::uniform_grid;
    } else if (mesh_type == "padua") {
        config.mesh.kind = MeshKind::padua;
    } else {
        v.problems.push_back("[mesh] type must be uniform or padua, got '" + mesh_type + "'");
    }
    config.mesh.n_per_axis = static_cast<int>(v.integer("mesh", "n_per_axis", 1000));
    if (config.mesh.n_per_axis < 1) v.problems.push_back("[mesh] n_per_axis must be >= 1");

    config.solver.pivot_tol = v.number("solver", "pivot_tol", 1e-9);
    if (!(config.solver.pivot_tol > 0.0)) v.problems.push_back("[solver] pivot_tol must be positive");
    const long long max_iters = v.integer("solver", "max_iters", 0);
    config.solver.max_iters = max_iters > 0 ? static_cast<int>(max_iters) : -1;

    config.cluster_enabled = v.boolean("metrics", "cluster", false);
    config.cluster_threshold = v.number("metrics", "cluster_threshold", 0.02);
    if (!(config.cluster_threshold > 0.0)) v.problems.push_back("[metrics] cluster_threshold must be positive");
    const std::string metric = file.get("metrics", "ground_metric", "euclidean");
    if (metric == "euclidean") {
        config.ground_metric = GroundMetric::euclidean;
    } else if (metric == "chebyshev") {
        config.ground_metric = GroundMetric::chebyshev;
    } else {
        v.problems.push_back("[metrics] ground_metric must be euclidean or chebyshev, got '" + metric + "'");
    }

    config.noise_level = v.number("noise", "level", 0.0);
    if (config.noise_level < 0.0) v.problems.push_back("[noise] level must be >= 0");

    if (!v.problems.empty()) throw ConfigError(std::move(v.problems));
    return config;
}

ExperimentConfig parse_experiment_config(const std::string& path) {
    return experiment_config_from(ConfigFile::parse_file(path));
}

}  // namespace heatmom
