#include "boettcher/cli.hpp"

#include "boettcher/domain.hpp"
#include "boettcher/oracle.hpp"
#include "boettcher/phi.hpp"
#include "boettcher/verify.hpp"
#include "boettcher/weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace boettcher::cli {

namespace {

using nlohmann::ordered_json;

// 17 significant digits, round-trip safe.
std::string num17(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::optional<WeightedDomain> domain_for(const Germ& f, const RunConfig& config, std::string& refusal) {
  const WeightReport w = weight_report(f);
  if (w.admissibility == Admissibility::alpha_undefined) {
    refusal = "alpha undefined (" + w.table_cell + "): no Boettcher coordinate on a weighted domain";
    return std::nullopt;
  }
  if (w.admissibility == Admissibility::inadmissible_d_eq1_boundary) {
    refusal = "d = 1 with alpha = (delta - 1)/gamma: conjugacy hypothesis fails";
    return std::nullopt;
  }
  return WeightedDomain(config.alpha.value_or(*w.alpha), config.r1, config.r2);
}

std::vector<Point> grid_points(const WeightedDomain& domain, int n) {
  const SampleOptions defaults;
  const double aw = domain.a.to_double();
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    const double abs_w = domain.r2 * std::exp(-defaults.depth * (i + 0.5) / n);
    for (int j = 0; j < n; ++j) {
      const double abs_z = domain.r1 * std::pow(abs_w, aw) * std::exp(-defaults.depth * (j + 0.5) / n);
      out.push_back({std::polar(abs_z, std::numbers::pi / 5), std::polar(abs_w, std::numbers::pi / 7)});
    }
  }
  return out;
}

std::vector<Point> read_points(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Point> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.rfind("re_z", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double v[4];
    if (!(row >> v[0] >> v[1] >> v[2] >> v[3]))
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected re_z,im_z,re_w,im_w");
    out.push_back({{v[0], v[1]}, {v[2], v[3]}});
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("--tol must be > 0");
  if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::invalid_argument("--r1 and --r2 must be > 0");
  if (max_n < 1) throw std::invalid_argument("--max-n must be >= 1");
  if (grid < 1) throw std::invalid_argument("--grid must be >= 1");
  if (alpha && alpha->is_negative()) throw std::invalid_argument("--alpha must be >= 0");
}

CommandOutput cmd_weight(const Germ& f, const RunConfig& config) {
  const WeightReport w = weight_report(f);
  CommandOutput out;
  if (config.format == Format::json) {
    ordered_json j;
    j["germ"] = ordered_json::parse(germ_to_json(f));
    j["description"] = describe(f);
    j["weights"] = ordered_json::parse(to_json(w));
    out.text = j.dump(2) + "\n";
  } else {
    auto opt = [](const std::optional<Rational>& r) { return r ? r->str() : std::string("undefined"); };
    out.text = "field,value\n";
    out.text += "description," + csv_quote(describe(f)) + "\n";
    out.text += "trivial," + std::string(w.trivial ? "true" : "false") + "\n";
    out.text += "m_f," + w.m_f.str() + "\n";
    out.text += "alpha_0," + opt(w.alpha_0) + "\n";
    out.text += "interval," + csv_quote(w.interval.str()) + "\n";
    out.text += "alpha," + opt(w.alpha) + "\n";
    out.text += "admissibility," + to_string(w.admissibility) + "\n";
    out.text += "table_cell," + csv_quote(w.table_cell) + "\n";
  }
  return out;
}

CommandOutput cmd_eval(const Germ& f, const RunConfig& config) {
  CommandOutput out;
  std::string refusal;
  const auto domain = domain_for(f, config, refusal);
  if (!domain) {
    out.note = "eval refused: " + refusal;
    return out;
  }
  const std::vector<Point> points =
      config.points_path.empty() ? grid_points(*domain, config.grid) : read_points(config.points_path);
  const BoettcherMap map(f, config.max_n);

  struct Row {
    Point x;
    Point phi;
    int n_used = 0;
    double increment = 0.0;
    std::string status;
  };
  std::vector<Row> rows;
  for (const auto& x : points) {
    Row row{x, {}, 0, 0.0, "ok"};
    try {
      const PhiEval e = map.phi(x, config.tol);
      row.phi = e.value;
      row.n_used = e.n_used;
      row.increment = e.last_increment;
      if (!e.converged) row.status = "not converged";
    } catch (const AxisError&) {
      row.status = "rejected: axis";
    } catch (const BranchError& e) {
      row.status = "rejected: branch at iterate " + std::to_string(e.iterate());
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    rows.push_back(std::move(row));
  }

  if (config.format == Format::csv) {
    std::string& t = out.text;
    t = "re_z,im_z,re_w,im_w,re_phi1,im_phi1,re_phi2,im_phi2,n_used,increment,status\n";
    for (const auto& r : rows) {
      const bool ok = r.status == "ok" || r.status == "not converged";
      const std::string nan = "nan";
      t += num17(r.x.z.real()) + "," + num17(r.x.z.imag()) + "," + num17(r.x.w.real()) + "," + num17(r.x.w.imag()) +
           ",";
      t += ok ? num17(r.phi.z.real()) + "," + num17(r.phi.z.imag()) + "," + num17(r.phi.w.real()) + "," +
                    num17(r.phi.w.imag())
              : nan + "," + nan + "," + nan + "," + nan;
      t += "," + std::to_string(r.n_used) + "," + (ok ? num17(r.increment) : nan) + "," + csv_quote(r.status) + "\n";
    }
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      j["z"] = {r.x.z.real(), r.x.z.imag()};
      j["w"] = {r.x.w.real(), r.x.w.imag()};
      if (r.status == "ok" || r.status == "not converged") {
        j["phi1"] = {r.phi.z.real(), r.phi.z.imag()};
        j["phi2"] = {r.phi.w.real(), r.phi.w.imag()};
        j["increment"] = r.increment;
      }
      j["n_used"] = r.n_used;
      j["status"] = r.status;
      arr.push_back(std::move(j));
    }
    ordered_json doc;
    doc["description"] = describe(f);
    doc["domain"] = {{"a", domain->a.str()}, {"r1", domain->r1}, {"r2", domain->r2}};
    doc["rows"] = std::move(arr);
    out.text = doc.dump(2) + "\n";
  }
  return out;
}

CommandOutput cmd_verify(const Germ& f, const RunConfig& config) {
  VerifyOptions options;
  options.check.samples = config.samples;
  options.check.seed = config.seed;
  options.check.tol = config.tol;
  options.check.max_n = config.max_n;
  options.a = config.alpha;
  options.r1 = config.r1;
  options.r2 = config.r2;
  const VerifyReport report = run_verify(f, options);
  CommandOutput out;
  out.exit_code = report.gates_passed() ? kOk : kGateFailed;
  if (report.checks.empty()) out.note = "verify: " + report.status;
  if (config.format == Format::json) {
    out.text = to_json(report, config.timings);
  } else {
    out.text = "name,passed,gating,skipped,measured,bound,samples,dropped,details";
    if (config.timings) out.text += ",seconds";
    out.text += "\n";
    for (const auto& c : report.checks) {
      out.text += c.name + "," + (c.passed ? "true" : "false") + "," + (c.gating ? "true" : "false") + "," +
                  (c.skipped ? "true" : "false") + "," + num17(c.measured) + "," + num17(c.bound) + "," +
                  std::to_string(c.samples) + "," + std::to_string(c.dropped) + "," + csv_quote(c.details);
      if (config.timings) out.text += "," + num17(c.seconds);
      out.text += "\n";
    }
  }
  return out;
}

CommandOutput cmd_oracle_compare(const Germ& f, const RunConfig& config) {
  CheckResult r;
  r.name = "oracle_compare";
  CheckOptions opt;
  opt.samples = config.samples;
  opt.seed = config.seed;
  opt.tol = config.tol;
  opt.max_n = config.max_n;
  const auto start = std::chrono::steady_clock::now();
  if (const auto family = match_semiconjugate(f)) {
    const WeightedDomain domain(config.alpha.value_or(family->weight()), config.r1, config.r2);
    const BoettcherMap map(f, opt.max_n);
    const auto points = sample_domain(domain, opt.samples, opt.sampling());
    r.bound = 1e-8;
    r.samples = static_cast<int>(points.size());
    int warnings = 0;
    for (const auto& x : points) {
      const PhiEval e = map.phi(x, opt.tol);
      const ClosedFormEval c = closed_form_phi(*family, x);
      if (c.branch_warning) ++warnings;
      r.measured = std::max({r.measured, std::abs(e.value.z - c.value.z) / std::abs(c.value.z),
                             std::abs(e.value.w - c.value.w) / std::abs(c.value.w)});
    }
    r.passed = r.measured <= r.bound;
    r.details = "semiconjugate family d=" + std::to_string(family->d) + " l=" + family->l.str() +
                ": max relative deviation of phi from (z, z^l phi_g(w/z^l))";
    if (warnings > 0) r.details += "; " + std::to_string(warnings) + " samples near the z^l branch cut";
  } else if (const auto b = match_affine_d1(f)) {
    const Germ f0 = f.monomial_model();
    const auto points = sample_domain(WeightedDomain(Rational(0), config.r1, config.r2), opt.samples, opt.sampling());
    r.bound = 1e-12;
    r.samples = static_cast<int>(points.size());
    for (const auto& x : points) {
      const Point lhs = f.eval(affine_oracle_d1(*b, x));
      const Point rhs = affine_oracle_d1(*b, f0.eval(x));
      r.measured = std::max({r.measured, std::abs(lhs.z - rhs.z) / std::max(std::abs(rhs.z), kResidualFloor),
                             std::abs(lhs.w - rhs.w) / std::max(std::abs(rhs.w), kResidualFloor)});
    }
    r.passed = r.measured <= r.bound;
    r.details = "affine d = 1 family: relative residual of f o h_f = h_f o f0 with h_f(z,w) = (z, w + z/(1-b))";
  } else {
    r.skipped = true;
    r.passed = false;
    r.gating = false;
    r.details = "no oracle: germ matches neither (z^d, w^d + c z^k) nor (z^2, b z w + z^2)";
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CommandOutput out;
  if (r.skipped) out.note = "oracle-compare: no oracle";
  out.exit_code = r.gating && !r.passed ? kGateFailed : kOk;
  if (config.format == Format::json) {
    out.text = to_json(r, config.timings);
  } else {
    out.text = "name,passed,measured,bound,samples,details\n" + r.name + "," + (r.passed ? "true" : "false") + "," +
               num17(r.measured) + "," + num17(r.bound) + "," + std::to_string(r.samples) + "," +
               csv_quote(r.details) + "\n";
  }
  return out;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weights and Boettcher coordinates of superattracting skew-product germs"};
  app.require_subcommand(1);
  RunConfig config;
  std::string alpha_text, format_text = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--germ", config.germ_path, "germ-spec JSON file")->required();
    sub->add_option("--r1", config.r1, "first radius of the weighted domain");
    sub->add_option("--r2", config.r2, "second radius of the weighted domain");
    sub->add_option("--alpha", alpha_text, "weight exponent p/q of the domain (default: computed alpha)");
    sub->add_option("--tol", config.tol, "phi increment tolerance");
    sub->add_option("--max-n", config.max_n, "maximum number of product factors");
    sub->add_option("--samples", config.samples, "number of sample points");
    sub->add_option("--seed", config.seed, "sampling seed");
    sub->add_option("--out", config.out, "output path (default: stdout)");
    sub->add_option("--format", format_text, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--timings", config.timings, "include wall-clock seconds per check");
  };
  CLI::App* weight = app.add_subcommand("weight", "exact weight analysis");
  CLI::App* eval = app.add_subcommand("eval", "phi on a log-radial grid (CSV)");
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  CLI::App* oracle = app.add_subcommand("oracle-compare", "compare phi with a closed-form oracle");
  for (CLI::App* sub : {weight, eval, verify, oracle}) add_common(sub);
  eval->add_option("--grid", config.grid, "grid size N (N x N points)");
  eval->add_option("--points", config.points_path, "CSV of re_z,im_z,re_w,im_w points instead of the grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  if (weight->parsed()) config.command = Command::weight;
  if (eval->parsed()) {
    config.command = Command::eval;
    if (format_text == "json" && !eval->count("--format")) format_text = "csv";
  }
  if (verify->parsed()) config.command = Command::verify;
  if (oracle->parsed()) config.command = Command::oracle_compare;
  config.format = format_text == "csv" ? Format::csv : Format::json;

  Germ f = Germ::skew(2, {}, {{Complex(1.0, 0.0), 0, 2}});
  try {
    if (!alpha_text.empty()) config.alpha = Rational::parse(alpha_text);
    config.validate();
    f = parse_germ(read_file(config.germ_path));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  CommandOutput result;
  try {
    switch (config.command) {
      case Command::weight: result = cmd_weight(f, config); break;
      case Command::eval: result = cmd_eval(f, config); break;
      case Command::verify: result = cmd_verify(f, config); break;
      case Command::oracle_compare: result = cmd_oracle_compare(f, config); break;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (!result.note.empty()) err << result.note << "\n";
  if (config.out.empty()) {
    out << result.text;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!(file << result.text)) {
      err << "error: cannot write " << config.out << "\n";
      return kUsageError;
    }
  }
  return result.exit_code;
}

}  // namespace boettcher::cli
