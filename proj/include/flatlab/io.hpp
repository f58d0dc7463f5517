#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

#include "flatlab/diagnostics.hpp"
#include "flatlab/families.hpp"
#include "flatlab/montecarlo.hpp"
#include "flatlab/polynomial.hpp"
#include "flatlab/riesz.hpp"

namespace flatlab {

// Parse failures carry the byte position reported by the JSON parser.
nlohmann::json json_from_file(const std::string& path);
nlohmann::json json_from_string(const std::string& text);

// Polynomial files: {"exponents": [...], "weights": ["1/3", ...]}, weights
// optional (default uniform). Exponents not containing 0 are shifted down by
// their minimum; `shifted`/`shift` record that normalization.
struct PolynomialParseResult {
  AnalyticPolynomial poly;
  bool shifted = false;
  std::int64_t shift = 0;
};

PolynomialParseResult polynomial_from_json(
    const nlohmann::json& j, std::int64_t work_budget = kDefaultWorkBudget);

// A file holding either one polynomial object or an array of them.
std::vector<PolynomialParseResult> polynomials_from_json(
    const nlohmann::json& j, std::int64_t work_budget = kDefaultWorkBudget);

nlohmann::json polynomial_to_json(const AnalyticPolynomial& p);

// Shortest representation that round-trips a double.
std::string format_double(double x);

// Reports serialize rationals as "num/den" strings in exact mode and plain
// numbers in float mode; `mode` records which. from_json requires the mode
// embedded in the JSON to match the requested scalar.
template <class Scalar>
nlohmann::json report_to_json(const DiagnosticsReport<Scalar>& rep);

template <class Scalar>
DiagnosticsReport<Scalar> report_from_json(const nlohmann::json& j);

std::string report_csv_header();

template <class Scalar>
std::string report_csv_row(const DiagnosticsReport<Scalar>& rep);

nlohmann::json verdict_to_json(const NecessaryConditionVerdict& v);

nlohmann::json flatness_to_json(const FlatnessReport& rep);
std::string flatness_csv_header();
std::string flatness_csv_row(const FlatnessReport& rep);

nlohmann::json experiment_to_json(const ExperimentConfig& cfg,
                                  const ExperimentResult& res);
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepCell& cell, std::int64_t samples);
nlohmann::json sweep_to_json(const std::vector<SweepCell>& cells,
                             std::int64_t samples);

nlohmann::json schedule_to_json(const DissociationSchedule& s);
std::string convergence_csv_header();
std::string convergence_csv_row(const ConvergenceRow& row);

nlohmann::json lambda_to_json(std::int64_t range, const LambdaResult& res);
nlohmann::json kernel_min_to_json(std::int64_t degree, const KernelMin& km);

// Raw density dump: 8-byte little-endian length header, then the values as
// little-endian IEEE f64.
void write_density_dump(const std::string& path, const Eigen::ArrayXd& values);
Eigen::ArrayXd read_density_dump(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

// ---- template implementations ----

namespace detail {

template <class Scalar>
nlohmann::json scalar_to_json(const Scalar& x) {
  if constexpr (ScalarOps<Scalar>::exact) {
    return format_rational(x);
  } else {
    return x;
  }
}

template <class Scalar>
Scalar scalar_from_json(const nlohmann::json& j) {
  if constexpr (ScalarOps<Scalar>::exact) {
    if (!j.is_string()) {
      throw InputError("expected rational string, got " + j.dump());
    }
    return parse_rational(j.get<std::string>());
  } else {
    if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
    if (!j.is_number()) {
      throw InputError("expected number, got " + j.dump());
    }
    return j.get<double>();
  }
}

}  // namespace detail

template <class Scalar>
nlohmann::json report_to_json(const DiagnosticsReport<Scalar>& rep) {
  nlohmann::json j;
  j["m"] = rep.m;
  j["N"] = rep.N;
  j["L"] = detail::scalar_to_json(rep.L);
  j["A"] = detail::scalar_to_json(rep.A);
  j["B"] = detail::scalar_to_json(rep.B);
  j["r"] = detail::scalar_to_json(rep.r);
  j["C"] = detail::scalar_to_json(rep.C);
  j["C_over_m2"] = detail::scalar_to_json(rep.c_over_m2);
  j["L2_over_C"] = detail::scalar_to_json(rep.l2_over_c);
  j["degenerate"] = rep.degenerate;
  j["mode"] = ScalarOps<Scalar>::mode_name();
  return j;
}

template <class Scalar>
DiagnosticsReport<Scalar> report_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("report must be a JSON object");
  if (j.value("mode", "") != ScalarOps<Scalar>::mode_name()) {
    throw InputError("report mode '" + j.value("mode", std::string("?")) +
                     "' does not match requested arithmetic");
  }
  DiagnosticsReport<Scalar> rep;
  try {
    rep.m = j.at("m").get<std::int64_t>();
    rep.N = j.at("N").get<std::int64_t>();
    rep.L = detail::scalar_from_json<Scalar>(j.at("L"));
    rep.A = detail::scalar_from_json<Scalar>(j.at("A"));
    rep.B = detail::scalar_from_json<Scalar>(j.at("B"));
    rep.r = detail::scalar_from_json<Scalar>(j.at("r"));
    rep.C = detail::scalar_from_json<Scalar>(j.at("C"));
    rep.c_over_m2 = detail::scalar_from_json<Scalar>(j.at("C_over_m2"));
    rep.l2_over_c = detail::scalar_from_json<Scalar>(j.at("L2_over_C"));
    rep.degenerate = j.at("degenerate").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  rep.mode = ScalarOps<Scalar>::exact ? ModeKind::kExact : ModeKind::kFloat;
  return rep;
}

template <class Scalar>
std::string report_csv_row(const DiagnosticsReport<Scalar>& rep) {
  const auto cell = [](const Scalar& x) {
    if constexpr (ScalarOps<Scalar>::exact) {
      return format_rational(x);
    } else {
      return format_double(x);
    }
  };
  std::string row = std::to_string(rep.m) + "," + std::to_string(rep.N);
  row += "," + cell(rep.L);
  row += "," + cell(rep.A);
  row += "," + cell(rep.r);
  row += "," + cell(rep.C);
  row += "," + cell(rep.c_over_m2);
  row += "," + cell(rep.l2_over_c);
  return row;
}

}  // namespace flatlab
