#pragma once

#include "heatmom/heat_forward.hpp"
#include "heatmom/measures.hpp"
#include "heatmom/moment_dynamics.hpp"
#include "heatmom/quadrature.hpp"

#include <string>
#include <vector>

namespace heatmom {

/// Full double precision (17 significant digits), '.' decimal separator.
std::string format_double(double value);

/// Atoms: header "x1,...,xd,amplitude", one atom per row.
void write_atoms_csv(const std::string& path, const AtomicMeasure& mu);
AtomicMeasure read_atoms_csv(const std::string& path);

/// Sensor readings: header "x1,...,xd,t,value".
void write_samples_csv(const std::string& path, const std::vector<HeatSample>& samples);
std::vector<HeatSample> read_samples_csv(const std::string& path);

/// Moments: header "alpha,value"; alpha is the comma-joined exponent tuple
/// (quoted when d > 1), rows in the canonical graded-lex order.
void write_moments_csv(const std::string& path, const MomentVector& moments);
MomentVector read_moments_csv(const std::string& path);

/// Quadrature rule nodes/weights: header "x1,...,xd,weight".
void write_rule_csv(const std::string& path, const QuadratureRule& rule);

/// Propagator matrix, row-major, multi-index labels in the header.
void write_propagator_csv(const std::string& path, const Propagator& propagator);

/// Minimal CSV support shared by the readers: splits a line honoring
/// double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace heatmom
