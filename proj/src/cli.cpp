#include "qwalk/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "qwalk/evolve.hpp"
#include "qwalk/limitlaw.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/verify.hpp"

namespace qwalk {

namespace {

std::string fmt15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

double parse_double_strict(const std::string& text) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw InvalidParams("not a number: '" + text + "'");
  return value;
}

std::string trimmed(const std::string& text) {
  std::size_t a = text.find_first_not_of(" \t");
  std::size_t b = text.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return text.substr(a, b - a + 1);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) throw IoError("cannot open output file: " + path);
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing output file: " + path);
}

std::string complex_str(const Complex& z) {
  return fmt15(z.real()) + (z.imag() < 0 ? "-" : "+") +
         fmt15(std::abs(z.imag())) + "i";
}

std::string case_str(const LawCase& c) {
  if (c.is_usual()) return "usual";
  return std::to_string(c.m) + "," + std::to_string(c.n);
}

std::string params_comment(const RunConfig& config) {
  std::ostringstream os;
  os << "theta=" << fmt15(config.theta) << " tau=" << config.tau
     << " m=" << config.m << " n=" << config.n
     << " alpha=" << complex_str(config.alpha)
     << " beta=" << complex_str(config.beta);
  return os.str();
}

WalkParams params_for_case(const RunConfig& config) {
  // The plain walk is observed before the first kick, so m = n = 1
  // placeholders never act.
  int m = config.law_case.is_usual() ? 1 : config.law_case.m;
  int n = config.law_case.is_usual() ? 1 : config.law_case.n;
  return make_params(config.theta, config.tau, m, n, config.alpha, config.beta);
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string t = trimmed(text);
  if (t.empty()) throw InvalidParams("empty angle");
  double sign = 1.0;
  if (t[0] == '+' || t[0] == '-') {
    if (t[0] == '-') sign = -1.0;
    t = t.substr(1);
  }
  std::size_t pos = t.find("pi");
  if (pos == std::string::npos) return sign * parse_double_strict(t);
  double coef = pos == 0 ? 1.0 : parse_double_strict(t.substr(0, pos));
  std::string rest = t.substr(pos + 2);
  double den = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw InvalidParams("bad angle: '" + text + "'");
    den = parse_double_strict(rest.substr(1));
    if (den == 0.0) throw InvalidParams("bad angle: '" + text + "'");
  }
  return sign * coef * std::numbers::pi / den;
}

Complex parse_complex_pair(const std::string& text) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw InvalidParams("complex amplitude must be 're,im': '" + text + "'");
  double re = parse_double_strict(trimmed(text.substr(0, comma)));
  double im = parse_double_strict(trimmed(text.substr(comma + 1)));
  return {re, im};
}

LawCase parse_case(const std::string& text) {
  std::string t = trimmed(text);
  if (t == "usual") return LawCase::usual();
  std::size_t comma = t.find(',');
  if (comma == std::string::npos)
    throw InvalidParams("case must be 'usual' or 'm,n': '" + text + "'");
  long m = std::lround(parse_double_strict(trimmed(t.substr(0, comma))));
  long n = std::lround(parse_double_strict(trimmed(t.substr(comma + 1))));
  if (m < 1 || n < 1)
    throw InvalidParams("case 'm,n' needs positive integers: '" + text + "'");
  return LawCase{static_cast<int>(m), static_cast<int>(n)};
}

void cmd_simulate(const RunConfig& config) {
  WalkParams params = make_params(config.theta, config.tau, config.m, config.n,
                                  config.alpha, config.beta);
  long t = config.t_override >= 0 ? config.t_override : params.analysis_time();
  DistTable dist = probabilities(evolve_to(params, t));

  std::ofstream out = open_output(config.out_path);
  out << "# qwalk simulate " << params_comment(config) << "\n";
  out << "# t=" << t << "\n";
  out << "x,probability\n";
  for (const auto& [x, p] : dist.entries) out << x << "," << fmt15(p) << "\n";
  finish_output(out, config.out_path);
}

void cmd_limit(const RunConfig& config) {
  if (config.grid_points < 101 || config.grid_points % 2 == 0)
    throw InvalidParams("grid-points must be an odd integer >= 101");
  LimitLaw law =
      limit_law(config.law_case, config.theta, config.alpha, config.beta);

  std::ofstream out = open_output(config.out_path);
  out << "# qwalk limit case=" << case_str(config.law_case) << " theta="
      << fmt15(config.theta) << " alpha=" << complex_str(config.alpha)
      << " beta=" << complex_str(config.beta) << "\n";
  out << "# delta_weight_at_zero=" << fmt15(law.delta_weight) << "\n";
  out << "x,density\n";
  // Uniform samples of the open interval (-1, 1).
  int g = config.grid_points;
  for (int i = 1; i <= g; ++i) {
    double x = -1.0 + 2.0 * static_cast<double>(i) / (g + 1);
    out << fmt15(x) << "," << fmt15(law.density(x)) << "\n";
  }
  finish_output(out, config.out_path);
}

void cmd_compare(const RunConfig& config) {
  WalkParams params = params_for_case(config);
  CompareOptions opts;
  opts.window_fraction = config.window_fraction;
  opts.orders = config.orders.empty() ? std::vector<int>{1, 2} : config.orders;
  opts.workers = config.workers;
  ComparisonReport report = compare(params, config.law_case, opts);

  nlohmann::ordered_json j;
  j["command"] = "compare";
  j["case"] = case_str(config.law_case);
  j["params"] = {{"theta", params.theta},
                 {"tau", params.tau},
                 {"m", params.m},
                 {"n", params.n},
                 {"alpha", {params.alpha.real(), params.alpha.imag()}},
                 {"beta", {params.beta.real(), params.beta.imag()}}};
  j["time"] = report.t;
  j["scale"] = report.scale;
  j["components"] = report.components;
  j["ks_distance"] = report.ks;
  j["sup_pointwise"] = report.sup_pointwise;
  j["localization"] = {
      {"window_fraction", report.localization.window_fraction},
      {"empirical_mass", report.localization.empirical_mass},
      {"predicted_atom", report.localization.predicted_atom}};
  j["moments"] = nlohmann::ordered_json::array();
  for (const MomentTriple& t : report.moments)
    j["moments"].push_back({{"r", t.r},
                            {"empirical", t.empirical},
                            {"spectral", t.spectral},
                            {"density", t.density}});

  std::ofstream out = open_output(config.out_path);
  out << j.dump(2) << "\n";
  finish_output(out, config.out_path);
}

void cmd_moments(const RunConfig& config) {
  validate_theta(config.theta);
  validate_spinor(config.alpha, config.beta);
  std::vector<int> orders =
      config.orders.empty() ? std::vector<int>{0, 1, 2} : config.orders;
  MomentOptions opts;
  opts.workers = config.workers;

  nlohmann::ordered_json j;
  j["command"] = "moments";
  j["case"] = case_str(config.law_case);
  j["params"] = {{"theta", config.theta},
                 {"alpha", {config.alpha.real(), config.alpha.imag()}},
                 {"beta", {config.beta.real(), config.beta.imag()}}};
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (int r : orders)
    m[std::to_string(r)] = limit_moment(config.law_case, config.theta,
                                        config.alpha, config.beta, r, opts);
  j["moments"] = m;

  std::ofstream out = open_output(config.out_path);
  out << j.dump(2) << "\n";
  finish_output(out, config.out_path);
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Time-inhomogeneous 2-state quantum walk toolkit"};
  app.require_subcommand(1);

  RunConfig config;
  // Defaults: the symmetric initial state (1/sqrt2, i/sqrt2).
  std::string theta_text = "pi/4";
  std::string alpha_text = "0.7071067811865476,0";
  std::string beta_text = "0,0.7071067811865476";
  std::string case_text = "usual";
  std::string orders_text;

  auto add_common = [&](CLI::App* sub, bool with_case) {
    sub->add_option("--theta", theta_text,
                    "coin angle, radians or pi fraction like pi/4");
    sub->add_option("--alpha", alpha_text, "initial up amplitude 're,im'");
    sub->add_option("--beta", beta_text, "initial down amplitude 're,im'");
    sub->add_option("--out", config.out_path, "output path")->required();
    if (with_case)
      sub->add_option("--case", case_text, "'usual' or 'm,n'")->required();
  };

  CLI::App* sim = app.add_subcommand("simulate", "site probabilities as CSV");
  add_common(sim, false);
  sim->add_option("--tau", config.tau, "inter-kick interval")->required();
  sim->add_option("--m", config.m, "number of kicks");
  sim->add_option("--n", config.n, "post-kick U-blocks");
  sim->add_option("--t", config.t_override, "final time (default (m+n)tau+m)");

  CLI::App* lim = app.add_subcommand("limit", "limit density as CSV");
  add_common(lim, true);
  lim->add_option("--grid-points", config.grid_points,
                  "odd sample count on (-1,1), >= 101");

  CLI::App* cmp = app.add_subcommand("compare", "cross-validation report JSON");
  add_common(cmp, true);
  cmp->add_option("--tau", config.tau)->required();
  cmp->add_option("--window-fraction", config.window_fraction);
  cmp->add_option("--orders", orders_text, "comma-separated moment orders");
  cmp->add_option("--workers", config.workers);

  CLI::App* mom = app.add_subcommand("moments", "limit moments as JSON");
  add_common(mom, true);
  mom->add_option("--orders", orders_text, "comma-separated moment orders");
  mom->add_option("--workers", config.workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    config.theta = parse_angle(theta_text);
    config.alpha = parse_complex_pair(alpha_text);
    config.beta = parse_complex_pair(beta_text);
    config.law_case = parse_case(case_text);
    if (!orders_text.empty()) {
      config.orders.clear();
      std::stringstream ss(orders_text);
      std::string item;
      while (std::getline(ss, item, ','))
        config.orders.push_back(
            static_cast<int>(std::lround(parse_double_strict(trimmed(item)))));
    }
    if (config.workers < 1)
      throw InvalidParams("workers must be >= 1");

    if (sim->parsed()) {
      config.subcommand = "simulate";
      if (config.t_override < -1)
        throw InvalidParams("t must be >= 0");
      cmd_simulate(config);
    } else if (lim->parsed()) {
      config.subcommand = "limit";
      cmd_limit(config);
    } else if (cmp->parsed()) {
      config.subcommand = "compare";
      cmd_compare(config);
    } else {
      config.subcommand = "moments";
      cmd_moments(config);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.emplace_back("qwalk");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace qwalk
