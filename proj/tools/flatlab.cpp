// flatlab: flatness diagnostics for analytic trigonometric polynomials with
// non-negative coefficients. One subcommand per operation; JSON or CSV on
// stdout (or --out); two-column plot series via --plot.
//
// Exit codes: 0 success, 2 input error, 3 work budget exceeded, 4 internal.

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flatlab/diagnostics.hpp"
#include "flatlab/families.hpp"
#include "flatlab/grid.hpp"
#include "flatlab/io.hpp"
#include "flatlab/montecarlo.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/riesz.hpp"

using namespace flatlab;

namespace {

// ---------- shared argument plumbing ----------

// Sweep ranges: "a", "a..b" (inclusive, step 1), "a..b x2" (geometric), and
// comma lists "2,4,8". Spaces are ignored.
std::vector<std::int64_t> parse_range(const std::string& text) {
  std::string s;
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw InputError("empty range");
  const auto dots = s.find("..");
  try {
    if (s.find(',') != std::string::npos) {
      std::vector<std::int64_t> out;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) throw InputError("empty item in range '" + text + "'");
        out.push_back(std::stoll(item));
      }
      return out;
    }
    if (dots == std::string::npos) {
      return {std::stoll(s)};
    }
    const std::int64_t lo = std::stoll(s.substr(0, dots));
    std::string rest = s.substr(dots + 2);
    std::int64_t factor = 0;
    const auto x = rest.find('x');
    if (x != std::string::npos) {
      factor = std::stoll(rest.substr(x + 1));
      if (factor < 2) {
        throw InputError("geometric factor in '" + text + "' must be >= 2");
      }
      rest = rest.substr(0, x);
    }
    const std::int64_t hi = std::stoll(rest);
    if (lo > hi) {
      throw InputError("range '" + text + "' has lower bound above upper");
    }
    std::vector<std::int64_t> out;
    if (factor == 0) {
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      for (std::int64_t v = lo; v <= hi; v *= factor) out.push_back(v);
    }
    return out;
  } catch (const std::invalid_argument&) {
    throw InputError("cannot parse range '" + text + "'");
  } catch (const std::out_of_range&) {
    throw InputError("range '" + text + "' out of 64-bit range");
  }
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InputError("cannot parse number '" + item + "'");
    }
  }
  if (out.empty()) throw InputError("empty number list");
  return out;
}

// One polynomial per sweep value, tagged with the swept parameter.
struct FamilyMember {
  std::int64_t param = 0;
  AnalyticPolynomial poly;
};

struct InputFlags {
  std::string file;
  std::string family;
  std::string m_range;
  std::string j_range;
  std::string r_range;
  std::int64_t budget = kDefaultWorkBudget;
};

void add_input_flags(CLI::App* cmd, InputFlags* in) {
  cmd->add_option("--file", in->file,
                  "polynomial JSON file (object or array of objects)");
  cmd->add_option("--family", in->family,
                  "built-in family: dirichlet | two-block | lambda-cover");
  cmd->add_option("--m", in->m_range, "dirichlet sweep, e.g. 2..8 or 2..64x2");
  cmd->add_option("--j", in->j_range, "two-block sweep");
  cmd->add_option("--R", in->r_range, "lambda-cover sweep");
  cmd->add_option("--budget", in->budget,
                  "cap on the positive spectrum size accepted per polynomial");
}

std::vector<FamilyMember> load_members(const InputFlags& in) {
  const bool has_file = !in.file.empty();
  const bool has_family = !in.family.empty();
  if (has_file == has_family) {
    throw InputError("exactly one of --file or --family is required");
  }
  std::vector<FamilyMember> members;
  if (has_file) {
    const auto parsed = polynomials_from_json(json_from_file(in.file), in.budget);
    for (const auto& pr : parsed) {
      if (pr.shifted) {
        std::cerr << "note: exponents shifted down by " << pr.shift
                  << " (diagnostics are shift-invariant)\n";
      }
      members.push_back({pr.poly.term_count(), pr.poly});
    }
    return members;
  }
  const auto sweep_of = [&](const std::string& range, const char* flag) {
    if (range.empty()) {
      throw InputError("family '" + in.family + "' needs " + flag);
    }
    return parse_range(range);
  };
  if (in.family == "dirichlet") {
    for (const auto m : sweep_of(in.m_range, "--m")) {
      members.push_back({m, dirichlet(m, in.budget)});
    }
  } else if (in.family == "two-block") {
    for (const auto j : sweep_of(in.j_range, "--j")) {
      members.push_back({j, two_block(j, in.budget)});
    }
  } else if (in.family == "lambda-cover") {
    for (const auto r : sweep_of(in.r_range, "--R")) {
      members.push_back({r, lambda_cover(r, in.budget)});
    }
  } else {
    throw InputError("unknown family '" + in.family +
                     "' (dirichlet | two-block | lambda-cover)");
  }
  return members;
}

ModeKind requested_mode(const std::string& mode) {
  if (mode == "exact") return ModeKind::kExact;
  if (mode == "float") return ModeKind::kFloat;
  throw InputError("--mode must be exact or float, got '" + mode + "'");
}

// Exact unless the polynomial is not exact-eligible; the downgrade is noted
// on stderr so pipelines reading stdout stay clean.
ModeKind effective_mode(const AnalyticPolynomial& p, ModeKind requested) {
  const auto resolved = resolve_mode(p, ArithmeticMode{requested});
  if (requested == ModeKind::kExact && resolved.kind == ModeKind::kFloat) {
    std::cerr << "note: falling back to float arithmetic (autocorrelation "
                 "coefficients are irrational)\n";
  }
  return resolved.kind;
}

// ---------- output plumbing ----------

struct OutputFlags {
  std::string format = "json";
  std::string out;
  std::string plot;
  std::string plot_series;
};

void add_output_flags(CLI::App* cmd, OutputFlags* of, bool with_plot = true) {
  cmd->add_option("--format", of->format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", of->out, "write stdout payload to this file");
  if (with_plot) {
    cmd->add_option("--plot", of->plot,
                    "write a two-column x,y series to this file");
  }
}

void deliver(const OutputFlags& of, const std::string& payload) {
  if (of.out.empty()) {
    std::cout << payload;
  } else {
    write_text_file(of.out, payload);
  }
}

void deliver_plot(const OutputFlags& of, const std::string& series) {
  if (!of.plot.empty()) write_text_file(of.plot, series);
}

std::string json_payload(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------- analyze ----------

DiagnosticsReport<double> float_view(const DiagnosticsReport<Rational>& rep) {
  DiagnosticsReport<double> out;
  out.m = rep.m;
  out.N = rep.N;
  out.L = to_double(rep.L);
  out.A = to_double(rep.A);
  out.B = to_double(rep.B);
  out.r = to_double(rep.r);
  out.C = to_double(rep.C);
  out.c_over_m2 = to_double(rep.c_over_m2);
  out.l2_over_c = to_double(rep.l2_over_c);
  out.degenerate = rep.degenerate;
  out.mode = ModeKind::kFloat;
  return out;
}

struct Analysis {
  std::vector<std::int64_t> params;
  std::vector<DiagnosticsReport<Rational>> exact;
  std::vector<DiagnosticsReport<double>> floating;
  std::vector<bool> is_exact;  // per member

  // Verdict inputs are uniform floats regardless of per-member mode.
  std::vector<DiagnosticsReport<double>> all_float;
};

Analysis analyze_members(const std::vector<FamilyMember>& members,
                         ModeKind requested, int threads) {
  Analysis a;
  for (const auto& member : members) {
    a.params.push_back(member.param);
    const auto mode = effective_mode(member.poly, requested);
    if (mode == ModeKind::kExact) {
      a.is_exact.push_back(true);
      a.exact.push_back(compute_report<Rational>(member.poly, threads));
      a.floating.emplace_back();
      a.all_float.push_back(float_view(a.exact.back()));
    } else {
      a.is_exact.push_back(false);
      a.floating.push_back(compute_report<double>(member.poly, threads));
      a.exact.emplace_back();
      a.all_float.push_back(a.floating.back());
    }
  }
  return a;
}

int run_analyze(const InputFlags& in, const OutputFlags& of,
                const std::string& mode, bool with_verdict, double l_floor,
                int threads) {
  const auto members = load_members(in);
  const auto requested = requested_mode(mode);
  const auto a = analyze_members(members, requested, threads);

  std::optional<NecessaryConditionVerdict> v;
  if (with_verdict) v = verdict(a.all_float, l_floor);

  std::string payload;
  if (of.format == "csv") {
    std::string csv = "param," + report_csv_header() + "\n";
    for (std::size_t i = 0; i < members.size(); ++i) {
      csv += std::to_string(a.params[i]) + ",";
      csv += a.is_exact[i] ? report_csv_row(a.exact[i])
                           : report_csv_row(a.floating[i]);
      csv += "\n";
    }
    if (v) {
      csv += "\nflag,l_floor,min_L,growth_factor,diverging\n";
      csv += std::string(flag_name(v->flag)) + "," + format_double(v->l_floor) +
             "," + format_double(v->min_L) + "," +
             format_double(v->growth_factor) + "," +
             (v->diverging ? "true" : "false") + "\n";
    }
    payload = csv;
  } else {
    nlohmann::json reports = nlohmann::json::array();
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto j = a.is_exact[i] ? report_to_json(a.exact[i])
                             : report_to_json(a.floating[i]);
      j["param"] = a.params[i];
      reports.push_back(std::move(j));
    }
    if (v) {
      nlohmann::json j;
      j["reports"] = std::move(reports);
      j["verdict"] = verdict_to_json(*v);
      payload = json_payload(j);
    } else {
      payload = json_payload(reports);
    }
  }
  deliver(of, payload);

  std::string series = "x,y\n";
  const bool want_l2 = of.plot_series == "l2_over_c";
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& rep = a.all_float[i];
    series += std::to_string(a.params[i]) + "," +
              format_double(want_l2 ? rep.l2_over_c : rep.c_over_m2) + "\n";
  }
  deliver_plot(of, series);
  return 0;
}

// ---------- family ----------

int run_family(const InputFlags& in, const OutputFlags& of, bool certify,
               std::int64_t kernel_grid) {
  if (in.family.empty()) throw InputError("family subcommand needs --family");

  if (kernel_grid > 0) {
    // Kernel minimum sweep: degree taken from the --m range.
    const auto degrees = parse_range(in.m_range.empty() ? "1" : in.m_range);
    std::string csv = "degree,min_value,argmin\n";
    nlohmann::json arr = nlohmann::json::array();
    for (const auto deg : degrees) {
      const auto km = dirichlet_kernel_min(deg, kernel_grid);
      csv += std::to_string(deg) + "," + format_double(km.min_value) + "," +
             format_double(km.argmin) + "\n";
      arr.push_back(kernel_min_to_json(deg, km));
    }
    deliver(of, of.format == "csv" ? csv : json_payload(arr));
    return 0;
  }

  const auto members = load_members(in);
  std::string csv = "param,terms,degree,covers_range,missing\n";
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& member : members) {
    const auto& p = member.poly;
    nlohmann::json j = polynomial_to_json(p);
    j["param"] = member.param;
    j["terms"] = p.term_count();
    j["degree"] = p.degree();
    std::string covers = "-", missing_count = "-";
    if (certify) {
      const auto cert = cover_certificate(p.exponents, p.degree());
      j["covers_range"] = cert.is_cover;
      j["missing"] = cert.missing;
      covers = cert.is_cover ? "true" : "false";
      missing_count = std::to_string(cert.missing.size());
    }
    csv += std::to_string(member.param) + "," + std::to_string(p.term_count()) +
           "," + std::to_string(p.degree()) + "," + covers + "," +
           missing_count + "\n";
    arr.push_back(std::move(j));
  }
  deliver(of, of.format == "csv" ? csv : json_payload(arr));
  return 0;
}

// ---------- sidon ----------

int run_sidon(const OutputFlags& of, std::int64_t count, std::int64_t start,
              const std::string& check) {
  nlohmann::json j;
  std::string csv;
  if (!check.empty()) {
    const auto set = parse_range(check);
    const auto profile = difference_profile(set);
    j["elements"] = set;
    j["is_sidon"] = is_sidon(set);
    j["max_count"] = profile.max_count();
    j["distinct_differences"] = profile.support().size();
    csv = "difference,count\n";
    for (const auto d : profile.support()) {
      csv += std::to_string(d) + "," + std::to_string(profile.count(d)) + "\n";
    }
  } else {
    const auto set = sidon_greedy(count, start);
    j["elements"] = set;
    j["is_sidon"] = true;
    csv = "index,element\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
      csv += std::to_string(i) + "," + std::to_string(set[i]) + "\n";
    }
  }
  deliver(of, of.format == "csv" ? csv : json_payload(j));
  return 0;
}

// ---------- lambda ----------

int run_lambda(const OutputFlags& of, const std::string& range_text,
               std::uint64_t node_budget, bool quiet) {
  const auto ranges = parse_range(range_text);
  nlohmann::json arr = nlohmann::json::array();
  std::string csv = "range,lambda,complete,lower,upper,nodes,witness\n";
  std::string series = "x,y\n";
  for (const auto range : ranges) {
    LambdaProgress progress;
    if (!quiet) {
      progress = [range](std::int64_t target, std::uint64_t nodes) {
        std::cerr << "lambda(" << range << "): searched size " << target
                  << " (" << nodes << " nodes)\n";
      };
    }
    const auto res = lambda_exact(range, node_budget, progress);
    arr.push_back(lambda_to_json(range, res));
    std::string witness;
    for (const auto x : res.witness) {
      if (!witness.empty()) witness += " ";
      witness += std::to_string(x);
    }
    csv += std::to_string(range) + "," + std::to_string(res.lambda) + "," +
           (res.complete ? "true" : "false") + "," +
           std::to_string(res.lower) + "," + std::to_string(res.upper) + "," +
           std::to_string(res.nodes) + "," + witness + "\n";
    series += std::to_string(range) + "," + std::to_string(res.lambda) + "\n";
  }
  deliver(of, of.format == "csv" ? csv : json_payload(arr));
  deliver_plot(of, series);
  return 0;
}

// ---------- riesz ----------

inline constexpr std::int64_t kGridCap = std::int64_t{1} << 26;

std::int64_t resolve_grid(std::int64_t requested, std::int64_t degree,
                          std::int64_t factor) {
  const std::int64_t minimum = minimal_grid_size(degree, factor);
  if (minimum > kGridCap) {
    throw BudgetError("grid of " + std::to_string(minimum) +
                      " points exceeds cap " + std::to_string(kGridCap) +
                      "; reduce the schedule degree");
  }
  if (requested <= 0) return minimum;
  return requested;
}

int run_riesz(const InputFlags& in, const OutputFlags& of, std::int64_t grid,
              std::int64_t grid_factor, bool verify, std::int64_t term_budget,
              std::int64_t density_prefix, const std::string& density_out) {
  const auto members = load_members(in);
  std::vector<AnalyticPolynomial> factors;
  factors.reserve(members.size());
  for (const auto& member : members) factors.push_back(member.poly);
  const auto s = schedule(std::move(factors));
  const std::int64_t count = static_cast<std::int64_t>(s.factors.size());

  nlohmann::json j = schedule_to_json(s);
  std::string csv;

  if (verify) {
    nlohmann::json checks = nlohmann::json::array();
    csv += "prefix,dissociated\n";
    for (std::int64_t prefix = 1; prefix <= count; ++prefix) {
      const bool ok = verify_dissociated(s, prefix, term_budget);
      checks.push_back(ok);
      csv += std::to_string(prefix) + "," + (ok ? "true" : "false") + "\n";
    }
    j["dissociated"] = std::move(checks);
    csv += "\n";
  }

  const std::int64_t g = resolve_grid(grid, s.degrees.back(), grid_factor);
  const auto rows = convergence_track(s, g);
  j["grid_size"] = g;
  nlohmann::json jrows = nlohmann::json::array();
  csv += convergence_csv_header() + "\n";
  std::string series = "x,y\n";
  for (const auto& row : rows) {
    nlohmann::json jr;
    jr["prefix"] = row.prefix;
    jr["geo_mean"] = row.geo_mean;
    jr["min"] = row.min;
    jr["max"] = row.max;
    jr["frac_in_band"] = row.frac_in_band;
    jrows.push_back(std::move(jr));
    csv += convergence_csv_row(row) + "\n";
    series += std::to_string(row.prefix) + "," +
              format_double(row.frac_in_band) + "\n";
  }
  j["convergence"] = std::move(jrows);

  if (!density_out.empty()) {
    const std::int64_t prefix = density_prefix < 0 ? count : density_prefix;
    write_density_dump(density_out, partial_density(s, prefix, g));
    j["density_dump"] = density_out;
    j["density_prefix"] = prefix;
  }

  deliver(of, of.format == "csv" ? csv : json_payload(j));
  deliver_plot(of, series);
  return 0;
}

// ---------- flatness ----------

int run_flatness(const InputFlags& in, const OutputFlags& of,
                 std::int64_t grid, std::int64_t grid_factor) {
  const auto members = load_members(in);
  nlohmann::json arr = nlohmann::json::array();
  std::string csv = "param," + flatness_csv_header() + "\n";
  std::string series = "x,y\n";
  for (const auto& member : members) {
    const std::int64_t g = resolve_grid(grid, member.poly.degree(), grid_factor);
    const auto rep = flatness(member.poly, g);
    auto j = flatness_to_json(rep);
    j["param"] = member.param;
    arr.push_back(std::move(j));
    csv += std::to_string(member.param) + "," + flatness_csv_row(rep) + "\n";
    series += std::to_string(member.param) + "," + format_double(rep.l1_abs) +
              "\n";
  }
  deliver(of, of.format == "csv" ? csv : json_payload(arr));
  deliver_plot(of, series);
  return 0;
}

// ---------- montecarlo ----------

int run_montecarlo(const OutputFlags& of, const std::string& r_text,
                   const std::string& eps_text, std::int64_t samples,
                   std::uint64_t seed, std::int64_t grid_factor,
                   double confidence, bool wilson, bool fix_r_literal) {
  ExperimentConfig base;
  base.grid_factor = grid_factor;
  base.confidence = confidence;
  base.wilson = wilson;
  base.fix_r_literal = fix_r_literal;
  const auto cells =
      sweep(parse_range(r_text), parse_double_list(eps_text), samples, seed,
            base);
  std::string csv = sweep_csv_header() + "\n";
  std::string series = "x,y\n";
  for (const auto& cell : cells) {
    csv += sweep_csv_row(cell, samples) + "\n";
    if (cell.result) {
      series += std::to_string(cell.R) + "," +
                format_double(cell.result->estimate) + "\n";
    }
  }
  deliver(of, of.format == "csv" ? csv
                                 : json_payload(sweep_to_json(cells, samples)));
  deliver_plot(of, series);
  return 0;
}

// ---------- verdict ----------

int run_verdict(const InputFlags& in, const OutputFlags& of,
                const std::string& mode, double l_floor, bool with_series,
                int threads) {
  const auto members = load_members(in);
  const auto requested = requested_mode(mode);
  const auto a = analyze_members(members, requested, threads);
  const auto v = verdict(a.all_float, l_floor);

  nlohmann::json j = verdict_to_json(v);
  j["params"] = a.params;
  std::string csv = "key,value\n";
  csv += std::string("flag,") + flag_name(v.flag) + "\n";
  csv += "l_floor," + format_double(v.l_floor) + "\n";
  csv += "min_L," + format_double(v.min_L) + "\n";
  csv += std::string("l_bounded_away,") + (v.l_bounded_away ? "true" : "false") +
         "\n";
  csv += "growth_factor," + format_double(v.growth_factor) + "\n";
  csv += std::string("diverging,") + (v.diverging ? "true" : "false") + "\n";

  if (with_series) {
    const auto sums = singularity_series(a.all_float);
    j["singularity_partial_sums"] = sums;
    csv += "\nindex,partial_sum\n";
    for (std::size_t i = 0; i < sums.size(); ++i) {
      csv += std::to_string(i) + "," + format_double(sums[i]) + "\n";
    }
  }
  deliver(of, of.format == "csv" ? csv : json_payload(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "flatness diagnostics for analytic trigonometric polynomials with "
      "non-negative coefficients"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --threads appear after the subcommand too

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker cap (0 = FLATLAB_THREADS or hardware)");

  // analyze
  InputFlags an_in;
  OutputFlags an_of;
  std::string an_mode = "exact";
  bool an_verdict = false;
  double an_l_floor = kDefaultLFloor;
  auto* an = app.add_subcommand(
      "analyze", "diagnostics report per polynomial (L, A, r, C, ratios)");
  add_input_flags(an, &an_in);
  add_output_flags(an, &an_of);
  an->add_option("--mode", an_mode, "exact | float (default exact)");
  an->add_flag("--verdict", an_verdict, "append the necessary-condition verdict");
  an->add_option("--l-floor", an_l_floor,
                 "L threshold for 'bounded away from zero'");
  an->add_option("--plot-series", an_of.plot_series,
                 "c_over_m2 (default) | l2_over_c")
      ->check(CLI::IsMember({"c_over_m2", "l2_over_c"}));

  // family
  InputFlags fam_in;
  OutputFlags fam_of;
  bool fam_certify = false;
  std::int64_t fam_kernel_grid = 0;
  auto* fam = app.add_subcommand(
      "family", "inspect built-in supports; cover certificates; kernel minima");
  add_input_flags(fam, &fam_in);
  add_output_flags(fam, &fam_of, false);
  fam->add_flag("--certify", fam_certify,
                "attach a difference-cover certificate per member");
  fam->add_option("--kernel-grid", fam_kernel_grid,
                  "report kernel minima over the --m range on this grid");

  // sidon
  OutputFlags sid_of;
  std::int64_t sid_count = 10, sid_start = 1;
  std::string sid_check;
  auto* sid = app.add_subcommand(
      "sidon", "greedy Sidon sets and difference-profile checks");
  add_output_flags(sid, &sid_of, false);
  sid->add_option("--count", sid_count, "elements to generate");
  sid->add_option("--start", sid_start, "first element");
  sid->add_option("--check", sid_check,
                  "comma list to test for the Sidon property instead");

  // lambda
  OutputFlags lam_of;
  std::string lam_range;
  std::uint64_t lam_budget = 0;
  bool lam_quiet = false;
  auto* lam = app.add_subcommand(
      "lambda", "minimal difference-cover sizes by exhaustive search");
  add_output_flags(lam, &lam_of);
  lam->add_option("--range", lam_range, "cover range(s), e.g. 9 or 4..16")
      ->required();
  lam->add_option("--node-budget", lam_budget,
                  "search node cap (0 = exhaustive, required above 120)");
  lam->add_flag("--quiet", lam_quiet, "suppress per-size progress on stderr");

  // riesz
  InputFlags rz_in;
  OutputFlags rz_of;
  std::int64_t rz_grid = 0, rz_grid_factor = 4, rz_term_budget = 1'000'000;
  std::int64_t rz_density_prefix = -1;
  std::string rz_density_out;
  bool rz_verify = false;
  auto* rz = app.add_subcommand(
      "riesz", "dissociation schedules and partial-product convergence");
  add_input_flags(rz, &rz_in);
  add_output_flags(rz, &rz_of);
  rz->add_option("--grid", rz_grid, "evaluation grid (0 = minimal)");
  rz->add_option("--grid-factor", rz_grid_factor, "oversampling factor");
  rz->add_flag("--verify", rz_verify, "formally verify dissociation per prefix");
  rz->add_option("--term-budget", rz_term_budget,
                 "cap on the formal expansion size for --verify");
  rz->add_option("--density-out", rz_density_out,
                 "dump the partial-product density to this binary file");
  rz->add_option("--density-prefix", rz_density_prefix,
                 "prefix for --density-out (default: all factors)");

  // flatness
  InputFlags fl_in;
  OutputFlags fl_of;
  std::int64_t fl_grid = 0, fl_grid_factor = 4;
  auto* fl = app.add_subcommand(
      "flatness", "grid metrics of |P| against the flat target 1");
  add_input_flags(fl, &fl_in);
  add_output_flags(fl, &fl_of);
  fl->add_option("--grid", fl_grid, "evaluation grid (0 = minimal)");
  fl->add_option("--grid-factor", fl_grid_factor, "oversampling factor");

  // montecarlo
  OutputFlags mc_of;
  std::string mc_r = "4", mc_eps = "0.5";
  std::int64_t mc_samples = 1000, mc_grid_factor = 4;
  std::uint64_t mc_seed = 0;
  double mc_confidence = 0.95;
  bool mc_wilson = false, mc_literal = false;
  auto* mc = app.add_subcommand(
      "montecarlo", "random-support experiments over R x epsilon grids");
  add_output_flags(mc, &mc_of);
  mc->add_option("--R", mc_r, "support scale(s), e.g. 2..5 or 2,4,8");
  mc->add_option("--epsilon", mc_eps, "threshold(s), comma separated");
  mc->add_option("--samples", mc_samples, "samples per cell");
  mc->add_option("--seed", mc_seed, "base seed");
  mc->add_option("--grid-factor", mc_grid_factor, "quadrature oversampling");
  mc->add_option("--confidence", mc_confidence, "CI confidence level");
  mc->add_flag("--wilson", mc_wilson, "Wilson interval instead of Hoeffding");
  mc->add_flag("--fix-r-literal", mc_literal,
               "pin {0, R} in sampled supports instead of {0, R^2}");

  // verdict
  InputFlags vd_in;
  OutputFlags vd_of;
  std::string vd_mode = "exact";
  double vd_l_floor = kDefaultLFloor;
  bool vd_series = false;
  auto* vd = app.add_subcommand(
      "verdict", "necessary-condition screen over a family sweep");
  add_input_flags(vd, &vd_in);
  add_output_flags(vd, &vd_of, false);
  vd->add_option("--mode", vd_mode, "exact | float (default exact)");
  vd->add_option("--l-floor", vd_l_floor,
                 "L threshold for 'bounded away from zero'");
  vd->add_flag("--series", vd_series, "append singularity-series partial sums");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (an->parsed()) {
      return run_analyze(an_in, an_of, an_mode, an_verdict, an_l_floor,
                         threads);
    }
    if (fam->parsed()) {
      return run_family(fam_in, fam_of, fam_certify, fam_kernel_grid);
    }
    if (sid->parsed()) return run_sidon(sid_of, sid_count, sid_start, sid_check);
    if (lam->parsed()) return run_lambda(lam_of, lam_range, lam_budget, lam_quiet);
    if (rz->parsed()) {
      return run_riesz(rz_in, rz_of, rz_grid, rz_grid_factor, rz_verify,
                       rz_term_budget, rz_density_prefix, rz_density_out);
    }
    if (fl->parsed()) return run_flatness(fl_in, fl_of, fl_grid, fl_grid_factor);
    if (mc->parsed()) {
      return run_montecarlo(mc_of, mc_r, mc_eps, mc_samples, mc_seed,
                            mc_grid_factor, mc_confidence, mc_wilson,
                            mc_literal);
    }
    if (vd->parsed()) {
      return run_verdict(vd_in, vd_of, vd_mode, vd_l_floor, vd_series, threads);
    }
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
