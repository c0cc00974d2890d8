#include "heatmom/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heatmom {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: '\n' line endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

double parse_double(const std::string& field, const std::string& path) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(field, &used);
    } catch (const std::exception&) {
        throw std::runtime_error(path + ": malformed numeric field '" + field + "'");
    }
    if (used != field.size()) throw std::runtime_error(path + ": malformed numeric field '" + field + "'");
    return value;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

void write_atoms_csv(const std::string& path, const AtomicMeasure& mu) {
    auto out = open_out(path);
    for (int j = 1; j <= mu.dim(); ++j) out << "x" << j << ",";
    out << "amplitude\n";
    for (const auto& atom : mu.atoms()) {
        for (double c : atom.position) out << format_double(c) << ",";
        out << format_double(atom.amplitude) << "\n";
    }
}

AtomicMeasure read_atoms_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty atoms file");
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header.back() != "amplitude") {
        throw std::runtime_error(path + ": expected header x1,...,xd,amplitude");
    }
    const int dim = static_cast<int>(header.size()) - 1;
    std::vector<Atom> atoms;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != dim + 1) {
            throw std::runtime_error(path + ": row with wrong field count: " + line);
        }
        Atom atom;
        for (int j = 0; j < dim; ++j) atom.position.push_back(parse_double(fields[static_cast<std::size_t>(j)], path));
        atom.amplitude = parse_double(fields[static_cast<std::size_t>(dim)], path);
        atoms.push_back(std::move(atom));
    }
    return AtomicMeasure(dim, std::move(atoms));
}

void write_samples_csv(const std::string& path, const std::vector<HeatSample>& samples) {
    auto out = open_out(path);
    const int dim = samples.empty() ? 1 : static_cast<int>(samples.front().position.size());
    for (int j = 1; j <= dim; ++j) out << "x" << j << ",";
    out << "t,value\n";
    for (const auto& sample : samples) {
        for (double c : sample.position) out << format_double(c) << ",";
        out << format_double(sample.time) << "," << format_double(sample.value) << "\n";
    }
}

std::vector<HeatSample> read_samples_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty samples file");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header.back() != "value") {
        throw std::runtime_error(path + ": expected header x1,...,xd,t,value");
    }
    const int dim = static_cast<int>(header.size()) - 2;
    std::vector<HeatSample> samples;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != dim + 2) {
            throw std::runtime_error(path + ": row with wrong field count: " + line);
        }
        HeatSample sample;
        for (int j = 0; j < dim; ++j) sample.position.push_back(parse_double(fields[static_cast<std::size_t>(j)], path));
        sample.time = parse_double(fields[static_cast<std::size_t>(dim)], path);
        sample.value = parse_double(fields[static_cast<std::size_t>(dim) + 1], path);
        samples.push_back(std::move(sample));
    }
    return samples;
}

namespace {

std::string alpha_label(const MultiIndex& alpha) {
    std::string label;
    for (int j = 0; j < alpha.dim(); ++j) {
        if (j) label += ",";
        label += std::to_string(alpha[j]);
    }
    return label;
}

}  // namespace

void write_moments_csv(const std::string& path, const MomentVector& moments) {
    auto out = open_out(path);
    out << "alpha,value\n";
    const MultiIndexSet set(moments.dim(), moments.order());
    for (int i = 0; i < set.size(); ++i) {
        const std::string label = alpha_label(set.at(i));
        if (moments.dim() > 1) {
            out << '"' << label << '"';
        } else {
            out << label;
        }
        out << "," << format_double(moments[i]) << "\n";
    }
}

MomentVector read_moments_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty moments file");
    std::vector<std::vector<int>> alphas;
    std::vector<double> values;
    int dim = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < 2) throw std::runtime_error(path + ": row with wrong field count: " + line);
        // the alpha label may have been split on its embedded commas when unquoted
        std::vector<int> alpha;
        for (std::size_t f = 0; f + 1 < fields.size(); ++f) {
            std::stringstream ss(fields[f]);
            std::string piece;
            while (std::getline(ss, piece, ',')) alpha.push_back(static_cast<int>(parse_double(piece, path)));
        }
        if (dim == 0) {
            dim = static_cast<int>(alpha.size());
        } else if (static_cast<int>(alpha.size()) != dim) {
            throw std::runtime_error(path + ": inconsistent multi-index arity");
        }
        alphas.push_back(std::move(alpha));
        values.push_back(parse_double(fields.back(), path));
    }
    if (alphas.empty()) throw std::runtime_error(path + ": no moment rows");

    int order = 0;
    for (const auto& alpha : alphas) {
        int degree = 0;
        for (int e : alpha) degree += e;
        order = std::max(order, degree);
    }
    const MultiIndexSet set(dim, order);
    if (set.size() != static_cast<int>(alphas.size())) {
        throw std::runtime_error(path + ": expected " + std::to_string(set.size()) +
                                 " moments of order <= " + std::to_string(order) + ", found " +
                                 std::to_string(alphas.size()));
    }
    Eigen::VectorXd packed(set.size());
    for (std::size_t row = 0; row < alphas.size(); ++row) {
        const int index = set.index_of(alphas[row]);
        if (index < 0) throw std::runtime_error(path + ": unexpected multi-index in row " + std::to_string(row));
        packed[index] = values[row];
    }
    return MomentVector(dim, order, std::move(packed));
}

void write_rule_csv(const std::string& path, const QuadratureRule& rule) {
    auto out = open_out(path);
    for (int j = 1; j <= rule.dim; ++j) out << "x" << j << ",";
    out << "weight\n";
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (double c : rule.nodes[i]) out << format_double(c) << ",";
        out << format_double(rule.weights[i]) << "\n";
    }
}

void write_propagator_csv(const std::string& path, const Propagator& propagator) {
    auto out = open_out(path);
    const MultiIndexSet set(propagator.dim(), propagator.order());
    out << "alpha";
    for (int i = 0; i < set.size(); ++i) {
        const std::string label = alpha_label(set.at(i));
        out << ",";
        if (propagator.dim() > 1) {
            out << '"' << label << '"';
        } else {
            out << label;
        }
    }
    out << "\n";
    for (int r = 0; r < set.size(); ++r) {
        const std::string label = alpha_label(set.at(r));
        if (propagator.dim() > 1) {
            out << '"' << label << '"';
        } else {
            out << label;
        }
        for (int c = 0; c < set.size(); ++c) out << "," << format_double(propagator.matrix()(r, c));
        out << "\n";
    }
}

}  // namespace heatmom
