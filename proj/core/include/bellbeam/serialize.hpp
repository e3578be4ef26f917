// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// JSON documents and CSV tables of the public file formats. The exact
// schemas are documented in docs/formats.md. All JSON parsing is strict:
// unknown keys are configuration errors, so typos cannot silently fall back
// to defaults. Numeric CSV fields use 17-significant-digit formatting so
// output digests are stable wherever the arithmetic is.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellbeam/dcs.hpp"
#include "bellbeam/estimator.hpp"
#include "bellbeam/experiment.hpp"
#include "bellbeam/quantum.hpp"
#include "bellbeam/socpes.hpp"

namespace bellbeam {

/// Round-trip decimal formatting ("%.17g").
std::string fmt17(double x);

// --- states and observables (schema bellbeam/state-v1, observable-v1) ----

std::string to_json_string(const BipartiteState& state, int indent = 2);
BipartiteState state_from_json(const std::string& text);

std::string to_json_string(const QubitObservable& obs, int indent = 2);
QubitObservable observable_from_json(const std::string& text);

// --- densities (schema bellbeam/density-v1) ------------------------------

std::string to_json_string(const AngularDensity& density, int indent = 2);
AngularDensity density_from_json(const std::string& text);

// --- experiment configuration (schema bellbeam/config-v1) ----------------

struct RunConfig {
  ExperimentConfig experiment;
  EstimatorOptions estimator;
  bool trial_log = false;
  bool seed_explicit = false;  // true when the document carried a seed
  std::optional<double> werner_p = 1.0;  // set when the state is a Werner state
};

/// Parses a config-v1 document (or a manifest-v1 document, from which the
/// embedded resolved config is taken), materializing every default. Throws
/// ConfigError with a line:column anchor on parse errors and a field path
/// on validation errors.
RunConfig config_from_json(const std::string& text);

/// The fully resolved configuration document (all defaults materialized).
std::string to_json_string(const RunConfig& config, int indent = 2);

// --- estimator report (schema bellbeam/estimate-v1) ----------------------

std::string estimate_to_json(const ChshEstimate& estimate, int indent = 2);

// --- CSV tables -----------------------------------------------------------

/// Long-format histogram rows, optionally restricted to one sub-ensemble.
void write_histogram_csv(std::ostream& out,
                         std::span<const HistogramRow> rows,
                         std::optional<SettingPair> only = std::nullopt);

void write_trial_log_csv(std::ostream& out,
                         std::span<const TrialRecord> records);

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);

/// One row of the PES table: Cartesian inputs plus spin-orbit parameters.
struct PesRow {
  CartesianInputs cartesian;
  double a = 0.0;
  double b = 0.0;
};

/// Header: v_xx,v_yy,v_zz,v_xz,a,b. Throws ConfigError naming the offending
/// row (1-based, header excluded) on malformed or missing fields.
std::vector<PesRow> read_pes_csv(std::istream& in);

/// Echoes the inputs and appends two_state_1..2 and adiabat_1..6 columns.
void write_pes_csv(std::ostream& out, std::span<const PesRow> rows);

/// Single-point JSON interface (schema bellbeam/pes-v1): parses one PesRow.
PesRow pes_row_from_json(const std::string& text);
/// Matrices, two-state pair and six adiabats of one point as JSON.
std::string pes_result_to_json(const PesRow& row, int indent = 2);

/// Two-column CSV (theta_rad, intensity), optional header line.
void read_xy_csv(std::istream& in, std::vector<double>& theta,
                 std::vector<double>& intensity);

}  // namespace bellbeam
