#include "flatlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace flatlab {

nlohmann::json json_from_string(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

nlohmann::json json_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() already carries the byte position.
    throw InputError("in '" + path + "': " + e.what());
  }
}

PolynomialParseResult polynomial_from_json(const nlohmann::json& j,
                                           std::int64_t work_budget) {
  if (!j.is_object() || !j.contains("exponents")) {
    throw InputError("polynomial JSON must be an object with 'exponents'");
  }
  std::vector<std::int64_t> exps;
  const auto& je = j.at("exponents");
  if (!je.is_array() || je.empty()) {
    throw InputError("'exponents' must be a non-empty array");
  }
  for (std::size_t i = 0; i < je.size(); ++i) {
    if (!je[i].is_number_integer()) {
      throw InputError("'exponents' entry at position " + std::to_string(i) +
                       " is not an integer");
    }
    exps.push_back(je[i].get<std::int64_t>());
  }
  std::vector<Rational> weights;
  if (j.contains("weights")) {
    const auto& jw = j.at("weights");
    if (!jw.is_array()) throw InputError("'weights' must be an array");
    for (std::size_t i = 0; i < jw.size(); ++i) {
      if (jw[i].is_string()) {
        weights.push_back(parse_rational(jw[i].get<std::string>()));
      } else if (jw[i].is_number_integer()) {
        weights.push_back(Rational(jw[i].get<std::int64_t>()));
      } else {
        throw InputError("'weights' entry at position " + std::to_string(i) +
                         " must be a rational string");
      }
    }
  } else {
    weights.assign(exps.size(), Rational(1, exps.size()));
  }
  PolynomialParseResult result;
  const std::int64_t lo = *std::min_element(exps.begin(), exps.end());
  if (lo != 0) {
    // Diagnostics are shift-invariant; normalize so the constant term is 1.
    for (auto& e : exps) e -= lo;
    result.shifted = true;
    result.shift = lo;
  }
  result.poly =
      AnalyticPolynomial::make(std::move(exps), std::move(weights), work_budget);
  return result;
}

std::vector<PolynomialParseResult> polynomials_from_json(
    const nlohmann::json& j, std::int64_t work_budget) {
  std::vector<PolynomialParseResult> out;
  if (j.is_array()) {
    for (const auto& item : j) {
      out.push_back(polynomial_from_json(item, work_budget));
    }
  } else {
    out.push_back(polynomial_from_json(j, work_budget));
  }
  return out;
}

nlohmann::json polynomial_to_json(const AnalyticPolynomial& p) {
  nlohmann::json j;
  j["exponents"] = p.exponents;
  std::vector<std::string> weights;
  weights.reserve(p.weights.size());
  for (const auto& w : p.weights) weights.push_back(format_rational(w));
  j["weights"] = weights;
  return j;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  double parsed = 0.0;
  std::sscanf(buf, "%lf", &parsed);
  if (parsed == x) {
    // Try shorter forms that still round-trip.
    for (int prec = 1; prec <= 16; ++prec) {
      char shorter[64];
      std::snprintf(shorter, sizeof(shorter), "%.*g", prec, x);
      std::sscanf(shorter, "%lf", &parsed);
      if (parsed == x) return shorter;
    }
  }
  return buf;
}

std::string report_csv_header() {
  return "m,N,L,A,r,C,C_over_m2,L2_over_C";
}

nlohmann::json verdict_to_json(const NecessaryConditionVerdict& v) {
  nlohmann::json j;
  j["flag"] = flag_name(v.flag);
  j["l_floor"] = v.l_floor;
  j["min_L"] = v.min_L;
  j["l_bounded_away"] = v.l_bounded_away;
  j["C_over_m2"] = v.c_over_m2;
  j["last_above_first"] = v.last_above_first;
  j["growth_factor"] = v.growth_factor;
  j["diverging"] = v.diverging;
  return j;
}

nlohmann::json flatness_to_json(const FlatnessReport& rep) {
  nlohmann::json j;
  j["grid_size"] = rep.grid_size;
  j["l1_abs"] = rep.l1_abs;
  j["l1_sq"] = rep.l1_sq;
  j["sup_dev"] = rep.sup_dev;
  j["near_one_fraction"] = rep.near_one_fraction;
  return j;
}

std::string flatness_csv_header() {
  return "grid_size,l1_abs,l1_sq,sup_dev,near_one_fraction";
}

std::string flatness_csv_row(const FlatnessReport& rep) {
  return std::to_string(rep.grid_size) + "," + format_double(rep.l1_abs) +
         "," + format_double(rep.l1_sq) + "," + format_double(rep.sup_dev) +
         "," + format_double(rep.near_one_fraction);
}

nlohmann::json experiment_to_json(const ExperimentConfig& cfg,
                                  const ExperimentResult& res) {
  nlohmann::json j;
  j["R"] = cfg.R;
  j["epsilon"] = cfg.epsilon;
  j["samples"] = res.samples;
  j["estimate"] = res.estimate;
  j["ci_low"] = res.ci_low;
  j["ci_high"] = res.ci_high;
  j["mean_l1"] = res.mean_l1;
  j["seed"] = res.seed;
  return j;
}

std::string sweep_csv_header() {
  return "R,epsilon,samples,estimate,ci_low,ci_high,mean_l1,seed";
}

std::string sweep_csv_row(const SweepCell& cell, std::int64_t samples) {
  std::string row = std::to_string(cell.R) + "," + format_double(cell.epsilon);
  if (cell.result) {
    const auto& r = *cell.result;
    row += "," + std::to_string(r.samples);
    row += "," + format_double(r.estimate);
    row += "," + format_double(r.ci_low);
    row += "," + format_double(r.ci_high);
    row += "," + format_double(r.mean_l1);
    row += "," + std::to_string(r.seed);
  } else {
    row += "," + std::to_string(samples) + ",error,error,error,error," +
           std::to_string(cell.cell_seed);
  }
  return row;
}

nlohmann::json sweep_to_json(const std::vector<SweepCell>& cells,
                             std::int64_t samples) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& cell : cells) {
    nlohmann::json j;
    j["R"] = cell.R;
    j["epsilon"] = cell.epsilon;
    j["seed"] = cell.cell_seed;
    if (cell.result) {
      const auto& r = *cell.result;
      j["samples"] = r.samples;
      j["estimate"] = r.estimate;
      j["ci_low"] = r.ci_low;
      j["ci_high"] = r.ci_high;
      j["mean_l1"] = r.mean_l1;
    } else {
      j["samples"] = samples;
      j["error"] = cell.error;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

nlohmann::json schedule_to_json(const DissociationSchedule& s) {
  nlohmann::json j;
  j["l"] = s.l;
  j["degrees"] = s.degrees;
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : s.factors) factors.push_back(polynomial_to_json(f));
  j["factors"] = factors;
  return j;
}

std::string convergence_csv_header() {
  return "prefix,geo_mean,min,max,frac_in_band";
}

std::string convergence_csv_row(const ConvergenceRow& row) {
  return std::to_string(row.prefix) + "," + format_double(row.geo_mean) + "," +
         format_double(row.min) + "," + format_double(row.max) + "," +
         format_double(row.frac_in_band);
}

nlohmann::json lambda_to_json(std::int64_t range, const LambdaResult& res) {
  nlohmann::json j;
  j["range"] = range;
  j["lambda"] = res.lambda;
  j["witness"] = res.witness;
  j["complete"] = res.complete;
  j["lower"] = res.lower;
  j["upper"] = res.upper;
  j["nodes"] = res.nodes;
  return j;
}

nlohmann::json kernel_min_to_json(std::int64_t degree, const KernelMin& km) {
  nlohmann::json j;
  j["degree"] = degree;
  j["min_value"] = km.min_value;
  j["argmin"] = km.argmin;
  return j;
}

namespace {

void write_u64_le(std::ofstream& out, std::uint64_t v) {
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = (v >> (8 * i)) & 0xff;
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

std::uint64_t read_u64_le(std::ifstream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw InputError("density dump truncated in header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace

void write_density_dump(const std::string& path,
                        const Eigen::ArrayXd& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  write_u64_le(out, static_cast<std::uint64_t>(values.size()));
  static_assert(sizeof(double) == 8);
  // Little-endian host assumption checked at runtime.
  const std::uint16_t probe = 1;
  if (*reinterpret_cast<const unsigned char*>(&probe) != 1) {
    throw std::logic_error("density dump requires a little-endian host");
  }
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw InputError("short write to '" + path + "'");
}

Eigen::ArrayXd read_density_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  const std::uint64_t n = read_u64_le(in);
  in.seekg(0, std::ios::end);
  const std::uint64_t payload = static_cast<std::uint64_t>(in.tellg()) - 8;
  if (payload != n * sizeof(double)) {
    throw InputError("density dump length header " + std::to_string(n) +
                     " does not match payload of " + std::to_string(payload) +
                     " bytes");
  }
  in.seekg(8, std::ios::beg);
  Eigen::ArrayXd values(static_cast<Eigen::Index>(n));
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw InputError("density dump truncated in payload");
  return values;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InputError("short write to '" + path + "'");
}

}  // namespace flatlab
