// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#include "bellbeam/serialize.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "bellbeam/errors.hpp"

namespace bellbeam {

using nlohmann::json;

namespace {

constexpr const char* kConfigSchema = "bellbeam/config-v1";
constexpr const char* kManifestSchema = "bellbeam/manifest-v1";
constexpr const char* kStateSchema = "bellbeam/state-v1";
constexpr const char* kObservableSchema = "bellbeam/observable-v1";
constexpr const char* kDensitySchema = "bellbeam/density-v1";
constexpr const char* kEstimateSchema = "bellbeam/estimate-v1";
constexpr const char* kPesSchema = "bellbeam/pes-v1";

/// Parse with a line:column anchor in the error message.
json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min(e.byte, text.size());
    for (std::size_t i = 0; i + 1 <= stop && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("JSON parse error at line " + std::to_string(line) +
                      ", column " + std::to_string(column) + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (key == k) {
        known = true;
        break;
      }
    if (!known) fail(path, "unknown key '" + key + "'");
  }
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

bool get_bool(const json& obj, const std::string& path, const char* key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

json density_to_json(const AngularDensity& density) {
  json comps = json::array();
  for (const auto& c : density.components())
    comps.push_back({{"weight", c.weight},
                     {"mean_rad", c.mean_rad},
                     {"sigma_rad", c.sigma_rad}});
  return comps;
}

AngularDensity density_from(const json& comps, const std::string& path) {
  if (!comps.is_array() || comps.empty())
    fail(path, "expected a nonempty array of components");
  std::vector<GaussianComponent> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string cpath = path + "[" + std::to_string(i) + "]";
    const json& c = comps[i];
    require_object(c, cpath);
    check_keys(c, cpath, {"weight", "mean_rad", "sigma_rad"});
    for (const char* key : {"weight", "mean_rad", "sigma_rad"})
      if (!c.contains(key)) fail(cpath, std::string("missing '") + key + "'");
    out.push_back({get_number(c, cpath, "weight", 0.0),
                   get_number(c, cpath, "mean_rad", 0.0),
                   get_number(c, cpath, "sigma_rad", 0.0)});
  }
  try {
    return AngularDensity(std::move(out));
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

DcsPair dcs_pair_from(const json& j, const std::string& path,
                      const std::string& fallback_label) {
  require_object(j, path);
  check_keys(j, path, {"label", "plus", "minus"});
  if (!j.contains("plus") || !j.contains("minus"))
    fail(path, "a channel needs 'plus' and 'minus' component lists");
  std::string label = fallback_label;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) fail(path + ".label", "expected a string");
    label = j.at("label").get<std::string>();
  }
  try {
    return DcsPair(density_from(j.at("plus"), path + ".plus"),
                   density_from(j.at("minus"), path + ".minus"), label);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

json dcs_pair_to_json(const DcsPair& pair) {
  return json{{"label", pair.label()},
              {"plus", density_to_json(pair.plus())},
              {"minus", density_to_json(pair.minus())}};
}

Matrix4c matrix_from(const json& rows, const std::string& path) {
  if (!rows.is_array() || rows.size() != 4)
    fail(path, "expected 4 rows of 4 [re, im] entries");
  Matrix4c m;
  for (int i = 0; i < 4; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != 4)
      fail(path, "row " + std::to_string(i) + " must have 4 entries");
    for (int j = 0; j < 4; ++j) {
      const json& entry = row[j];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number())
        fail(path, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                       ") must be a [re, im] pair");
      m(i, j) = std::complex<double>(entry[0].get<double>(),
                                     entry[1].get<double>());
    }
  }
  return m;
}

json matrix_to_json(const Matrix4c& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- CSV helpers -----------------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// --- states and observables -------------------------------------------------

std::string to_json_string(const BipartiteState& state, int indent) {
  const json doc{{"schema", kStateSchema},
                 {"label", state.label()},
                 {"matrix", matrix_to_json(state.matrix())}};
  return doc.dump(indent);
}

BipartiteState state_from_json(const std::string& text) {
  const json doc = parse_document(text);
  require_object(doc, "state");
  check_keys(doc, "state", {"schema", "label", "matrix", "werner_p"});
  if (doc.contains("schema") && doc.at("schema") != kStateSchema)
    fail("state.schema", "expected " + std::string(kStateSchema));
  if (doc.contains("werner_p")) {
    if (doc.contains("matrix"))
      fail("state", "give either 'werner_p' or 'matrix', not both");
    try {
      return make_werner(get_number(doc, "state", "werner_p", 1.0));
    } catch (const std::exception& e) {
      fail("state.werner_p", e.what());
    }
  }
  if (!doc.contains("matrix")) fail("state", "missing 'matrix'");
  std::string label;
  if (doc.contains("label")) label = doc.at("label").get<std::string>();
  try {
    return BipartiteState::from_matrix(matrix_from(doc.at("matrix"),
                                                   "state.matrix"),
                                       label);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail("state.matrix", e.what());
  }
}

std::string to_json_string(const QubitObservable& obs, int indent) {
  const json doc{
      {"schema", kObservableSchema},
      {"bloch", {obs.bloch().x(), obs.bloch().y(), obs.bloch().z()}}};
  return doc.dump(indent);
}

QubitObservable observable_from_json(const std::string& text) {
  const json doc = parse_document(text);
  require_object(doc, "observable");
  check_keys(doc, "observable", {"schema", "bloch"});
  if (doc.contains("schema") && doc.at("schema") != kObservableSchema)
    fail("observable.schema", "expected " + std::string(kObservableSchema));
  if (!doc.contains("bloch") || !doc.at("bloch").is_array() ||
      doc.at("bloch").size() != 3)
    fail("observable.bloch", "expected a 3-vector");
  const json& b = doc.at("bloch");
  try {
    return QubitObservable::from_bloch(
        {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()});
  } catch (const std::exception& e) {
    fail("observable.bloch", e.what());
  }
}

std::string to_json_string(const AngularDensity& density, int indent) {
  const json doc{{"schema", kDensitySchema},
                 {"components", density_to_json(density)}};
  return doc.dump(indent);
}

AngularDensity density_from_json(const std::string& text) {
  const json doc = parse_document(text);
  require_object(doc, "density");
  check_keys(doc, "density", {"schema", "components", "fit"});
  if (doc.contains("schema") && doc.at("schema") != kDensitySchema)
    fail("density.schema", "expected " + std::string(kDensitySchema));
  if (!doc.contains("components")) fail("density", "missing 'components'");
  return density_from(doc.at("components"), "density.components");
}

// --- experiment configuration ------------------------------------------------

RunConfig config_from_json(const std::string& text) {
  json doc = parse_document(text);
  require_object(doc, "config");

  // A manifest embeds the resolved config it ran with; accept it directly.
  if (doc.contains("schema") && doc.at("schema") == kManifestSchema) {
    if (!doc.contains("config"))
      fail("manifest", "missing embedded 'config'");
    doc = doc.at("config");
    require_object(doc, "manifest.config");
  }

  check_keys(doc, "config",
             {"schema", "state", "scatter_probability", "trials", "seed",
              "bins", "trial_log", "dcs", "estimator"});
  if (doc.contains("schema") && doc.at("schema") != kConfigSchema)
    fail("config.schema", "expected " + std::string(kConfigSchema));

  RunConfig config;

  if (doc.contains("state")) {
    const json& state = doc.at("state");
    require_object(state, "config.state");
    check_keys(state, "config.state", {"werner_p", "matrix", "label"});
    if (state.contains("werner_p") && state.contains("matrix"))
      fail("config.state", "give either 'werner_p' or 'matrix', not both");
    if (state.contains("matrix")) {
      std::string label;
      if (state.contains("label"))
        label = state.at("label").get<std::string>();
      try {
        config.experiment.state = BipartiteState::from_matrix(
            matrix_from(state.at("matrix"), "config.state.matrix"), label);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        fail("config.state.matrix", e.what());
      }
      config.werner_p.reset();
    } else {
      const double p = get_number(state, "config.state", "werner_p", 1.0);
      try {
        config.experiment.state = make_werner(p);
      } catch (const std::exception& e) {
        fail("config.state.werner_p", e.what());
      }
      config.werner_p = p;
    }
  }

  const double q = get_number(doc, "config", "scatter_probability",
                              config.experiment.scatter_probability);
  if (!(q >= 0.0 && q <= 1.0))
    fail("config.scatter_probability", "must lie in [0, 1]");
  config.experiment.scatter_probability = q;

  const double trials = get_number(
      doc, "config", "trials", static_cast<double>(config.experiment.trials));
  if (!(trials >= 1.0) || trials != std::floor(trials) || trials > 1e15)
    fail("config.trials", "must be a positive integer");
  config.experiment.trials = static_cast<std::uint64_t>(trials);

  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (!seed.is_number_integer() && !seed.is_number_unsigned())
      fail("config.seed", "must be an integer");
    config.experiment.seed = seed.get<std::uint64_t>();
    config.seed_explicit = true;
  }

  const double bins = get_number(doc, "config", "bins",
                                 static_cast<double>(config.experiment.bins));
  if (!(bins >= 1.0) || bins != std::floor(bins) || bins > 100000)
    fail("config.bins", "must be a positive integer");
  config.experiment.bins = static_cast<int>(bins);

  config.trial_log = get_bool(doc, "config", "trial_log", config.trial_log);

  if (doc.contains("dcs")) {
    const json& dcs = doc.at("dcs");
    require_object(dcs, "config.dcs");
    check_keys(dcs, "config.dcs", {"channel1", "channel2"});
    if (dcs.contains("channel1"))
      config.experiment.channel1 =
          dcs_pair_from(dcs.at("channel1"), "config.dcs.channel1",
                        default_channel1().label());
    if (dcs.contains("channel2"))
      config.experiment.channel2 =
          dcs_pair_from(dcs.at("channel2"), "config.dcs.channel2",
                        default_channel2().label());
  }

  if (doc.contains("estimator")) {
    const json& est = doc.at("estimator");
    require_object(est, "config.estimator");
    check_keys(est, "config.estimator",
               {"sign_pattern", "violation_sigmas", "bootstrap",
                "bootstrap_resamples"});
    if (est.contains("sign_pattern")) {
      const json& signs = est.at("sign_pattern");
      if (!signs.is_array() || signs.size() != 4)
        fail("config.estimator.sign_pattern", "expected 4 entries");
      int minus_count = 0;
      for (int k = 0; k < 4; ++k) {
        if (!signs[k].is_number_integer())
          fail("config.estimator.sign_pattern", "entries must be +-1");
        const int s = signs[k].get<int>();
        if (s != 1 && s != -1)
          fail("config.estimator.sign_pattern", "entries must be +-1");
        if (s == -1) ++minus_count;
        config.estimator.signs[k] = s;
      }
      if (minus_count != 1)
        fail("config.estimator.sign_pattern", "exactly one entry must be -1");
    }
    const double sigmas = get_number(est, "config.estimator",
                                     "violation_sigmas",
                                     config.estimator.violation_sigmas);
    if (!(sigmas > 0.0))
      fail("config.estimator.violation_sigmas", "must be positive");
    config.estimator.violation_sigmas = sigmas;
    config.estimator.bootstrap =
        get_bool(est, "config.estimator", "bootstrap",
                 config.estimator.bootstrap);
    const double resamples =
        get_number(est, "config.estimator", "bootstrap_resamples",
                   config.estimator.bootstrap_resamples);
    if (!(resamples >= 2.0) || resamples != std::floor(resamples) ||
        resamples > 1e7)
      fail("config.estimator.bootstrap_resamples",
           "must be an integer >= 2");
    config.estimator.bootstrap_resamples = static_cast<int>(resamples);
  }

  return config;
}

std::string to_json_string(const RunConfig& config, int indent) {
  json state;
  if (config.werner_p.has_value()) {
    state = json{{"werner_p", *config.werner_p}};
  } else {
    state = json{{"label", config.experiment.state.label()},
                 {"matrix", matrix_to_json(config.experiment.state.matrix())}};
  }
  const json doc{
      {"schema", kConfigSchema},
      {"state", state},
      {"scatter_probability", config.experiment.scatter_probability},
      {"trials", config.experiment.trials},
      {"seed", config.experiment.seed},
      {"bins", config.experiment.bins},
      {"trial_log", config.trial_log},
      {"dcs",
       {{"channel1", dcs_pair_to_json(config.experiment.channel1)},
        {"channel2", dcs_pair_to_json(config.experiment.channel2)}}},
      {"estimator",
       {{"sign_pattern", config.estimator.signs},
        {"violation_sigmas", config.estimator.violation_sigmas},
        {"bootstrap", config.estimator.bootstrap},
        {"bootstrap_resamples", config.estimator.bootstrap_resamples}}}};
  return doc.dump(indent);
}

// --- estimator report --------------------------------------------------------

std::string estimate_to_json(const ChshEstimate& estimate, int indent) {
  json terms;
  for (int k = 0; k < 4; ++k) {
    const auto pair = static_cast<SettingPair>(k);
    terms[std::string(to_string(pair))] =
        json{{"value", estimate.terms[k].value},
             {"std_error", estimate.terms[k].std_error},
             {"count", estimate.terms[k].count}};
  }
  const json doc{{"schema", kEstimateSchema},
                 {"S", estimate.S},
                 {"S_abs", std::abs(estimate.S)},
                 {"std_error", estimate.std_error},
                 {"se_method", estimate.se_method},
                 {"violated", estimate.violated},
                 {"violation_sigmas", estimate.violation_sigmas},
                 {"sign_pattern", estimate.signs},
                 {"terms", terms}};
  return doc.dump(indent);
}

// --- CSV tables ----------------------------------------------------------------

namespace {

void write_edge(std::ostream& out, double edge) {
  if (std::isnan(edge))
    out << "";
  else
    out << fmt17(edge);
}

}  // namespace

void write_histogram_csv(std::ostream& out,
                         std::span<const HistogramRow> rows,
                         std::optional<SettingPair> only) {
  out << "sub_ensemble,axis1,axis1_lo,axis1_hi,axis2,axis2_lo,axis2_hi,count\n";
  for (const HistogramRow& row : rows) {
    if (only && row.pair != *only) continue;
    out << to_string(row.pair) << ',' << row.axis1 << ',';
    write_edge(out, row.axis1_lo);
    out << ',';
    write_edge(out, row.axis1_hi);
    out << ',' << row.axis2 << ',';
    write_edge(out, row.axis2_lo);
    out << ',';
    write_edge(out, row.axis2_hi);
    out << ',' << row.count << '\n';
  }
}

void write_trial_log_csv(std::ostream& out,
                         std::span<const TrialRecord> records) {
  out << "pair,side1_kind,side1_value,side2_kind,side2_value\n";
  for (const TrialRecord& r : records) {
    out << r.index << ','
        << (r.side1.scattered ? "scattered" : "direct") << ','
        << fmt17(r.side1.value) << ','
        << (r.side2.scattered ? "scattered" : "direct") << ','
        << fmt17(r.side2.value) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "p,S_hat,SE,S_theory,violated\n";
  for (const SweepPoint& pt : points) {
    out << fmt17(pt.p) << ',' << fmt17(pt.s_abs) << ','
        << fmt17(pt.std_error) << ',' << fmt17(pt.s_theory) << ','
        << (pt.violated ? "true" : "false") << '\n';
  }
}

std::vector<PesRow> read_pes_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("pes input: empty file");
  const std::vector<std::string> header = split_csv_line(line);
  const std::array<const char*, 6> required{"v_xx", "v_yy", "v_zz",
                                            "v_xz", "a", "b"};
  std::array<int, 6> column{};
  for (std::size_t k = 0; k < required.size(); ++k) {
    int found = -1;
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == required[k]) found = static_cast<int>(c);
    if (found < 0)
      throw ConfigError(std::string("pes input: missing column '") +
                        required[k] + "'");
    column[k] = found;
  }

  std::vector<PesRow> rows;
  std::size_t row_number = 0;
  while (std::getline(in, line)) {
    ++row_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    std::array<double, 6> values{};
    for (std::size_t k = 0; k < required.size(); ++k) {
      if (static_cast<std::size_t>(column[k]) >= fields.size() ||
          !parse_double(fields[column[k]], values[k]))
        throw ConfigError("pes input: row " + std::to_string(row_number) +
                          ": bad value for column '" + required[k] + "'");
    }
    rows.push_back(PesRow{{values[0], values[1], values[2], values[3]},
                          values[4], values[5]});
  }
  return rows;
}

void write_pes_csv(std::ostream& out, std::span<const PesRow> rows) {
  out << "v_xx,v_yy,v_zz,v_xz,a,b,two_state_1,two_state_2,"
         "adiabat_1,adiabat_2,adiabat_3,adiabat_4,adiabat_5,adiabat_6\n";
  for (const PesRow& row : rows) {
    CouplingInputs coupled = cartesian_to_coupled(row.cartesian);
    coupled.a = row.a;
    coupled.b = row.b;
    const auto two = adiabats(
        build_two_state(coupled.v_sigma, coupled.v_pi, coupled.a, coupled.b));
    const auto six = adiabats(build_six_state(coupled).v_total);

    out << fmt17(row.cartesian.v_xx) << ',' << fmt17(row.cartesian.v_yy)
        << ',' << fmt17(row.cartesian.v_zz) << ','
        << fmt17(row.cartesian.v_xz) << ',' << fmt17(row.a) << ','
        << fmt17(row.b);
    for (double e : two) out << ',' << fmt17(e);
    for (double e : six) out << ',' << fmt17(e);
    out << '\n';
  }
}

PesRow pes_row_from_json(const std::string& text) {
  const json doc = parse_document(text);
  require_object(doc, "pes");
  check_keys(doc, "pes", {"schema", "v_xx", "v_yy", "v_zz", "v_xz", "a", "b"});
  if (doc.contains("schema") && doc.at("schema") != kPesSchema)
    fail("pes.schema", "expected " + std::string(kPesSchema));
  PesRow row;
  for (const char* key : {"v_xx", "v_yy", "v_zz", "v_xz", "a", "b"})
    if (!doc.contains(key)) fail("pes", std::string("missing '") + key + "'");
  row.cartesian.v_xx = get_number(doc, "pes", "v_xx", 0.0);
  row.cartesian.v_yy = get_number(doc, "pes", "v_yy", 0.0);
  row.cartesian.v_zz = get_number(doc, "pes", "v_zz", 0.0);
  row.cartesian.v_xz = get_number(doc, "pes", "v_xz", 0.0);
  row.a = get_number(doc, "pes", "a", 0.0);
  row.b = get_number(doc, "pes", "b", 0.0);
  return row;
}

std::string pes_result_to_json(const PesRow& row, int indent) {
  CouplingInputs coupled = cartesian_to_coupled(row.cartesian);
  coupled.a = row.a;
  coupled.b = row.b;
  const auto six = build_six_state(coupled);
  const auto two = build_two_state(coupled.v_sigma, coupled.v_pi, coupled.a,
                                   coupled.b);
  const json doc{
      {"schema", kPesSchema},
      {"inputs",
       {{"v_xx", row.cartesian.v_xx},
        {"v_yy", row.cartesian.v_yy},
        {"v_zz", row.cartesian.v_zz},
        {"v_xz", row.cartesian.v_xz},
        {"a", row.a},
        {"b", row.b}}},
      {"coupled",
       {{"v_sigma", coupled.v_sigma},
        {"v_pi", coupled.v_pi},
        {"v1", coupled.v1},
        {"v2", coupled.v2}}},
      {"two_state",
       {{"matrix", real_matrix_to_json(two.matrix())},
        {"adiabats", adiabats(two)}}},
      {"six_state",
       {{"v_el", real_matrix_to_json(six.v_el.matrix())},
        {"v_so", real_matrix_to_json(six.v_so.matrix())},
        {"labels", six.v_total.labels()},
        {"adiabats", adiabats(six.v_total)}}}};
  return doc.dump(indent);
}

void read_xy_csv(std::istream& in, std::vector<double>& theta,
                 std::vector<double>& intensity) {
  theta.clear();
  intensity.clear();
  std::string line;
  std::size_t row_number = 0;
  while (std::getline(in, line)) {
    ++row_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    double t = 0.0, y = 0.0;
    if (fields.size() < 2 || !parse_double(fields[0], t) ||
        !parse_double(fields[1], y)) {
      if (row_number == 1) continue;  // header line
      throw ConfigError("xy input: row " + std::to_string(row_number) +
                        " is not a (theta, intensity) pair");
    }
    theta.push_back(t);
    intensity.push_back(y);
  }
  if (theta.empty())
    throw ConfigError("xy input: no data rows");
}

}  // namespace bellbeam
