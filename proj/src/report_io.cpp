#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dwkb/experiment.hpp"

namespace dwkb {

namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + key + ": '" + v + "'");
  }
}

int parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + key + ": '" + v + "'");
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "phi_I") {
    config.phi_in = parse_double(value, key);
  } else if (key == "phi_II") {
    config.phi_out = parse_double(value, key);
  } else if (key == "N") {
    config.cells = parse_int(value, key);
  } else if (key == "N_h") {
    config.lead_cells = parse_int(value, key);
  } else if (key == "methods") {
    std::vector<Method> methods;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trimmed(tok);
      if (!tok.empty()) methods.push_back(method_from_name(tok));
    }
    config.methods = std::move(methods);
  } else if (key == "output_dir") {
    config.output_dir = value;
  } else if (key == "format") {
    if (value == "csv")
      config.format = OutputFormat::Csv;
    else if (value == "json")
      config.format = OutputFormat::Json;
    else
      throw ConfigError("format must be csv or json, got '" + value + "'");
  } else if (key == "ramp") {
    if (value == "phase")
      config.ramp = RampShape::Phase;
    else if (value == "coupling")
      config.ramp = RampShape::Coupling;
    else
      throw ConfigError("ramp must be phase or coupling, got '" + value + "'");
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    apply_config_entry(config, trimmed(line.substr(0, eq)), trimmed(line.substr(eq + 1)));
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path + "'");
  out << contents;
  if (!out) throw Error("failed writing output file '" + path + "'");
}

std::string method_series_csv(const MethodResult& r) {
  std::ostringstream os;
  os << "k,abs_y,arg_y,phase_shift\n";
  for (int k = r.abs_y.lo(); k <= r.abs_y.hi(); ++k)
    os << k << ',' << fmt(r.abs_y[k]) << ',' << fmt(r.arg_y[k]) << ','
       << fmt(r.phase_shift[k]) << '\n';
  return os.str();
}

nlohmann::ordered_json series_json(const RealSeries& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int k = s.lo(); k <= s.hi(); ++k) arr.push_back(s[k]);
  return arr;
}

std::string method_series_json(const MethodResult& r) {
  nlohmann::ordered_json j;
  j["method"] = method_name(r.method);
  j["k_first"] = r.abs_y.lo();
  j["abs_y"] = series_json(r.abs_y);
  j["arg_y"] = series_json(r.arg_y);
  j["phase_shift"] = series_json(r.phase_shift);
  return j.dump(2) + "\n";
}

std::string comparison_csv(const ComparisonReport& rep) {
  std::ostringstream os;
  os << "k,d_abs_m1,d_abs_m2,d_phase_m1,d_phase_m2\n";
  for (int k = rep.d_abs_m1.lo(); k <= rep.d_abs_m1.hi(); ++k)
    os << k << ',' << fmt(rep.d_abs_m1[k]) << ',' << fmt(rep.d_abs_m2[k]) << ','
       << fmt(rep.d_phase_m1[k]) << ',' << fmt(rep.d_phase_m2[k]) << '\n';
  return os.str();
}

nlohmann::ordered_json rt_json(Complex v) {
  nlohmann::ordered_json j;
  j["abs"] = std::abs(v);
  j["arg"] = std::arg(v);
  return j;
}

std::string summary_json(const ComparisonReport& rep, const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg;
  cfg["phi_I"] = config.phi_in;
  cfg["phi_II"] = config.phi_out;
  cfg["N"] = config.cells;
  cfg["N_h"] = config.lead_cells;
  cfg["ramp"] = config.ramp == RampShape::Phase ? "phase" : "coupling";
  std::string ms;
  for (const MethodResult& r : rep.methods) {
    if (!ms.empty()) ms += ",";
    ms += method_name(r.method);
  }
  cfg["methods"] = ms;
  j["config"] = cfg;
  for (const MethodResult& r : rep.methods) {
    nlohmann::ordered_json m;
    m["R"] = rt_json(r.R);
    m["T"] = rt_json(r.T);
    j[method_name(r.method)] = m;
  }
  if (!rep.phase_gap.empty()) {
    j["phase_gap"] = rep.phase_gap_at_end;
    j["phase_gap_prediction"] = rep.phase_gap_prediction;
  }
  if (!rep.flux.empty()) j["flux_defect"] = rep.flux_defect;
  if (!rep.methods.empty()) {
    j["delta_p"] = nlohmann::ordered_json{{"re", rep.delta_p.real()},
                                          {"im", rep.delta_p.imag()}};
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::vector<std::string> emit_outputs(const ComparisonReport& rep,
                                      const ExperimentConfig& config,
                                      const std::string& override_dir) {
  const std::string dir = override_dir.empty() ? config.output_dir : override_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());

  std::vector<std::string> written;
  for (const MethodResult& r : rep.methods) {
    const bool csv = config.format == OutputFormat::Csv;
    const std::string path =
        dir + "/" + method_name(r.method) + (csv ? ".csv" : ".json");
    write_file(path, csv ? method_series_csv(r) : method_series_json(r));
    written.push_back(path);
  }
  if (!rep.d_abs_m1.empty() && !rep.d_abs_m2.empty()) {
    const std::string path = dir + "/comparison.csv";
    write_file(path, comparison_csv(rep));
    written.push_back(path);
  }
  const std::string path = dir + "/summary.json";
  write_file(path, summary_json(rep, config));
  written.push_back(path);
  return written;
}

std::string geometry_csv_from_file(const std::string& geometry_path) {
  std::ifstream in(geometry_path);
  if (!in) throw Error("cannot open geometry file '" + geometry_path + "'");

  // header: k,a,b,d,t (trailing hole row may leave b,d,t empty)
  std::string line;
  if (!std::getline(in, line)) throw Error("empty geometry file");
  std::vector<double> a, b, d, t;
  double b_star = 4.0177, d_star = 3.0989;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trimmed(line);
    if (line.empty()) continue;
    if (line.rfind("b_star", 0) == 0 || line.rfind("d_star", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw Error("bad normalization line in geometry file");
      (line[0] == 'b' ? b_star : d_star) =
          parse_double(trimmed(line.substr(eq + 1)), "geometry normalization");
      continue;
    }
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(trimmed(tok));
    if (cols.size() < 2) throw Error("geometry line " + std::to_string(lineno) + " too short");
    a.push_back(parse_double(cols[1], "a"));
    if (cols.size() >= 5 && !cols[2].empty()) {
      b.push_back(parse_double(cols[2], "b"));
      d.push_back(parse_double(cols[3], "d"));
      t.push_back(parse_double(cols[4], "t"));
    }
  }
  if (a.size() != b.size() + 1)
    throw Error("geometry file must list one more hole than cells");

  // iris polynomial fits are only calibrated for radii in (0, 2] cm
  std::string out_of_fit;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] <= 0.0 || a[i] > 2.0)
      out_of_fit += (out_of_fit.empty() ? "" : " ") + std::to_string(i + 1);

  const WaveguideGeometry geom(RealSeries(1, std::move(a)), RealSeries(1, std::move(b)),
                               RealSeries(1, std::move(d)), RealSeries(1, std::move(t)),
                               b_star, d_star, true);
  const CoefficientSequence seq = coeffs_from_geometry(geom, ModelConstants::standard());
  std::ostringstream os;
  if (!out_of_fit.empty())
    os << "# warning: hole radii outside the (0, 2] cm fit range at holes " << out_of_fit
       << "\n";
  os << "k,a,b,d,t,z,alpha_km1,alpha_kp1,f1,f0\n";
  for (int k = 1; k <= geom.cells(); ++k) {
    const CouplingCoeffs cc = coupling_coeffs(geom, ModelConstants::standard(), k);
    os << k << ',' << fmt(geom.a[k]) << ',' << fmt(geom.b[k]) << ',' << fmt(geom.d[k]) << ','
       << fmt(geom.t[k]) << ',' << fmt(cc.Z) << ',' << fmt(cc.alpha_km1) << ','
       << fmt(cc.alpha_kp1) << ',';
    if (seq.f1().covers(k - 1))
      os << fmt(seq.f1(k - 1).real()) << ',' << fmt(seq.f0(k - 1).real());
    else
      os << ',';
    os << '\n';
  }
  return os.str();
}

}  // namespace dwkb
