#include "fraclap/cli.hpp"

#include "fraclap/analytic.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/spectrum.hpp"
#include "fraclap/tables.hpp"
#include "fraclap/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>

namespace fraclap::cli {

namespace {

using Row = nlohmann::ordered_json;

struct Common {
  int precision = static_cast<int>(kDefaultPrecision);
  double tol = kDefaultTol;
  std::string format = "csv";
  std::string out_path;
  int digits = 10;
  bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--precision-bits", c.precision, "working precision in bits")->check(CLI::Range(64, 4096));
  sub->add_option("--tol", c.tol, "target radius, relative to max(1, |value|)")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out_path, "output file (default stdout)");
  sub->add_option("--digits", c.digits, "significant digits for bounds")->check(CLI::Range(1, 200));
  sub->add_flag("--timing", c.timing, "append elapsed seconds to each record");
}

std::string env_name(const std::string& option) {
  std::string s = "FRACLAP_";
  for (char ch : option) s += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

using ConfigMap = std::map<std::string, std::vector<std::string>>;

// global keys first, then the subcommand's section on top
ConfigMap read_config(const std::string& path, const std::string& section) {
  ConfigMap out;
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  ConfigMap scoped;
  for (const auto& item : CLI::ConfigTOML().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    if (item.parents.empty()) out[item.name] = item.inputs;
    else if (item.parents.size() == 1 && item.parents[0] == section) scoped[item.name] = item.inputs;
  }
  for (auto& [k, v] : scoped) out[k] = v;
  return out;
}

// flags > environment > config file
void fill_unset(CLI::App* sub, const ConfigMap& config) {
  for (CLI::Option* opt : sub->get_options()) {
    if (opt->count() > 0 || opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help") continue;
    std::vector<std::string> values;
    if (const char* env = std::getenv(env_name(name).c_str()); env && *env) {
      values.emplace_back(env);
    } else if (auto it = config.find(name); it != config.end()) {
      values = it->second;
    } else {
      continue;
    }
    for (const auto& v : values) opt->add_result(v);
    opt->run_callback();
  }
}

void require(CLI::App* sub, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    if (sub->get_option(n)->count() == 0) throw CLI::RequiredError(n);
  }
}

std::string csv_field(const Row& v) {
  std::string s;
  if (v.is_string()) s = v.get<std::string>();
  else if (v.is_null()) s = "";
  else s = v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return s;
}

void emit(std::ostream& os, const std::vector<std::string>& columns, const std::vector<Row>& rows, const Common& c) {
  if (c.format == "json") {
    Row arr = Row::array();
    for (const auto& r : rows) arr.push_back(r);
    os << arr.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(r.at(columns[i]));
    os << '\n';
  }
}

class Output {
public:
  Output(const Common& c, std::ostream& fallback) : os_(&fallback) {
    if (!c.out_path.empty()) {
      file_.open(c.out_path);
      if (!file_) throw CLI::FileError("cannot open " + c.out_path + " for writing");
      os_ = &file_;
    }
  }
  std::ostream& get() { return *os_; }

private:
  std::ofstream file_;
  std::ostream* os_;
};

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<std::string> with_timing(std::vector<std::string> cols, const Common& c) {
  if (c.timing) cols.emplace_back("elapsed_s");
  return cols;
}

Row bound_row(const ProblemParams& p, const RadialBound& b, const Common& c) {
  Row r;
  r["d"] = p.d;
  r["alpha"] = p.alpha_text;
  r["N"] = p.N;
  r["n"] = b.n;
  r["lower"] = render_bound(b.lower, c.digits, false);
  r["upper"] = render_bound(b.upper, c.digits, true);
  r["err_lower"] = render_radius(b.lower_enc.rad());
  r["err_upper"] = b.finite_upper() ? render_radius(b.upper_enc.rad()) : "0";
  return r;
}

const std::vector<std::string> kBoundColumns{"d", "alpha", "N", "n", "lower", "upper", "err_lower", "err_upper"};

struct BoundsArgs {
  int d = 0;
  std::string alpha;
  int N = 0;
  int n_max = -1;
};

int cmd_bounds(const BoundsArgs& a, const Common& c, std::ostream& out) {
  Stopwatch sw;
  auto p = ProblemParams::make(a.d, a.alpha, a.N, static_cast<Precision>(c.precision), c.tol);
  const int n_max = a.n_max >= 0 ? a.n_max : std::max(a.N - 1, 0);
  BoundsResult r = radial_bounds(p, n_max);
  const double elapsed = sw.seconds();
  std::vector<Row> rows;
  for (const auto& b : r.entries) {
    Row row = bound_row(p, b, c);
    if (c.format == "json") {
      row["quantity"] = "lambda_{" + std::to_string(p.d) + "," + std::to_string(b.n) + "}";
      row["precision_bits"] = r.params.precision;
    }
    if (c.timing) row["elapsed_s"] = elapsed;
    rows.push_back(std::move(row));
  }
  Output o(c, out);
  emit(o.get(), with_timing(kBoundColumns, c), rows, c);
  return kOk;
}

struct TableArgs {
  int which = 0;
  bool diff = false;
  int decimals = 9;
};

int cmd_table(const TableArgs& a, const Common& c, std::ostream& out) {
  Stopwatch sw;
  std::vector<TableCell> cells = compute_table(a.which, static_cast<Precision>(c.precision), c.tol);
  const double elapsed = sw.seconds();
  std::vector<std::string> cols = kBoundColumns;
  if (a.diff) cols.insert(cols.end(), {"printed_lower", "printed_upper", "units_lower", "units_upper", "status"});
  cols = with_timing(cols, c);
  std::vector<Row> rows;
  int mismatches = 0;
  for (const auto& cell : cells) {
    Row r;
    r["d"] = cell.ref.d;
    r["alpha"] = cell.ref.alpha;
    r["N"] = cell.ref.N;
    r["n"] = cell.ref.n;
    // printed convention: 9 decimals unless overridden (the diff always compares at printed precision)
    r["lower"] = a.diff ? cell.lower : render_fixed(cell.bound.lower, a.decimals, false);
    r["upper"] = a.diff ? cell.upper : render_fixed(cell.bound.upper, a.decimals, true);
    r["err_lower"] = render_radius(cell.bound.lower_enc.rad());
    r["err_upper"] = cell.bound.finite_upper() ? render_radius(cell.bound.upper_enc.rad()) : "0";
    if (a.diff) {
      r["printed_lower"] = cell.ref.lower;
      r["printed_upper"] = cell.ref.upper;
      auto units = [](long long u) { return u == kUnitsInfinite ? Row("inf") : Row(u); };
      r["units_lower"] = units(cell.lower_units);
      r["units_upper"] = units(cell.upper_units);
      r["status"] = cell.matches() ? "match" : "MISMATCH";
      if (!cell.matches()) ++mismatches;
    }
    if (c.timing) r["elapsed_s"] = elapsed;
    rows.push_back(std::move(r));
  }
  Output o(c, out);
  emit(o.get(), cols, rows, c);
  return mismatches ? kVerifyFailed : kOk;
}

struct GapArgs {
  std::vector<int> d_list{1, 2, 3, 4, 5, 6, 7, 8, 9};
  int alpha_steps = 64;
};

int cmd_gap(const GapArgs& a, const Common& c, std::ostream& out) {
  if (a.d_list.empty()) throw CLI::ValidationError("--d-list", "must not be empty");
  const auto grid = alpha_grid(a.alpha_steps);
  std::vector<Row> rows;
  for (int d : a.d_list) {
    if (d < 1) throw DomainError("d must be >= 1");
    for (const auto& alpha : grid) {
      Stopwatch sw;
      Margin m = theorem2_margin(d, alpha, static_cast<Precision>(c.precision));
      Row r;
      r["d"] = d;
      r["alpha"] = alpha;
      r["margin_lower"] = render_bound(m.value.lower(), c.digits, false);
      r["margin_upper"] = render_bound(m.value.upper(), c.digits, true);
      r["lower_d_1"] = render_bound(m.lower1.lower(), c.digits, false);
      r["upper_d2_0"] = render_bound(m.upper0_next.upper(), c.digits, true);
      r["certified"] = m.certified();
      if (c.timing) r["elapsed_s"] = sw.seconds();
      rows.push_back(std::move(r));
    }
  }
  Output o(c, out);
  emit(o.get(), with_timing({"d", "alpha", "margin_lower", "margin_upper", "lower_d_1", "upper_d2_0", "certified"}, c),
       rows, c);
  return kOk;
}

struct SpectrumArgs {
  int d = 0;
  std::string alpha;
  int N = 8;
  int l_max = -1;  // automatic
  int count = 10;
};

constexpr int kAutoLMaxCap = 64;

int cmd_spectrum(const SpectrumArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  Stopwatch sw;
  auto p = ProblemParams::make(a.d, a.alpha, a.N, static_cast<Precision>(c.precision), c.tol);
  Spectrum s;
  if (a.l_max >= 0) {
    s = full_spectrum(p, a.l_max, a.count);
  } else {
    // smallest cut that is neither provably too small nor incomplete
    for (int l = 0;; ++l) {
      try {
        s = full_spectrum(p, l, a.count);
        if (s.complete || l >= kAutoLMaxCap) break;
      } catch (const NumericFailure& e) {
        if (e.kind() != NumericFailure::Kind::InvalidCut || l >= kAutoLMaxCap) throw;
      }
    }
  }
  if (!s.complete) err << "warning: " << s.warning << '\n';
  const double elapsed = sw.seconds();
  std::vector<Row> rows;
  int index = 0;
  for (const auto& e : s.entries) {
    Row r;
    r["index"] = index++;
    r["l"] = e.l;
    r["n"] = e.n;
    r["multiplicity"] = e.multiplicity;
    r["lower"] = render_bound(e.lower, c.digits, false);
    r["upper"] = render_bound(e.upper, c.digits, true);
    r["ambiguous"] = e.ambiguous;
    if (c.timing) r["elapsed_s"] = elapsed;
    rows.push_back(std::move(r));
  }
  Output o(c, out);
  emit(o.get(), with_timing({"index", "l", "n", "multiplicity", "lower", "upper", "ambiguous"}, c), rows, c);
  return kOk;
}

int cmd_verify(const std::string& suite, const Common& c, std::ostream& out) {
  Stopwatch sw;
  std::vector<CheckResult> results = run_suite(suite, static_cast<Precision>(c.precision));
  const double elapsed = sw.seconds();
  std::vector<Row> rows;
  bool all = true;
  for (const auto& r : results) {
    Row row;
    row["suite"] = r.suite;
    row["check"] = r.check;
    row["status"] = r.pass ? "PASS" : "FAIL";
    row["detail"] = r.detail;
    if (c.timing) row["elapsed_s"] = elapsed;
    all = all && r.pass;
    rows.push_back(std::move(row));
  }
  Output o(c, out);
  emit(o.get(), with_timing({"suite", "check", "status", "detail"}, c), rows, c);
  return all ? kOk : kVerifyFailed;
}

void diagnostic(std::ostream& err, const char* kind, const std::string& message) {
  Row r;
  r["error"] = kind;
  r["message"] = message;
  err << r.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified eigenvalue bounds for the fractional Laplacian on the unit ball", "fraclap"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "config file (TOML keys mirroring the flags)")->envname("FRACLAP_CONFIG");

  Common common;

  BoundsArgs bounds;
  CLI::App* sb = app.add_subcommand("bounds", "radial bounds for n = 0..n_max");
  sb->add_option("--d", bounds.d, "dimension")->check(CLI::PositiveNumber);
  sb->add_option("--alpha", bounds.alpha, "order in (0, 2], as a decimal");
  sb->add_option("--N", bounds.N, "number of basis functions")->check(CLI::NonNegativeNumber);
  sb->add_option("--n-max", bounds.n_max, "largest radial index (default N-1)")->check(CLI::NonNegativeNumber);
  add_common(sb, common);

  TableArgs table;
  CLI::App* st = app.add_subcommand("table", "reproduce a reference table");
  st->add_option("which", table.which, "table 1..4")->check(CLI::Range(1, 4));
  st->add_flag("--diff", table.diff, "compare with the embedded printed values");
  st->add_option("--decimals", table.decimals, "decimals in the rendering")->check(CLI::Range(0, 100));
  add_common(st, common);

  GapArgs gap;
  CLI::App* sg = app.add_subcommand("gap", "margin between the lambda_{d+2,0} upper and lambda_{d,1} lower bounds");
  sg->add_option("--d-list", gap.d_list, "dimensions")->delimiter(',');
  sg->add_option("--alpha-steps", gap.alpha_steps, "grid 2k/steps, k = 1..steps")->check(CLI::Range(1, 100000));
  add_common(sg, common);

  SpectrumArgs spec;
  CLI::App* ss = app.add_subcommand("spectrum", "full spectrum with multiplicities");
  ss->add_option("--d", spec.d, "dimension")->check(CLI::PositiveNumber);
  ss->add_option("--alpha", spec.alpha, "order in (0, 2], as a decimal");
  ss->add_option("--N", spec.N, "number of basis functions")->check(CLI::NonNegativeNumber);
  ss->add_option("--l-max", spec.l_max, "largest angular degree (default: smallest complete cut)")
      ->check(CLI::NonNegativeNumber);
  ss->add_option("--count", spec.count, "eigenvalues to report, with multiplicity")->check(CLI::PositiveNumber);
  add_common(ss, common);

  std::string suite;
  CLI::App* sv = app.add_subcommand("verify", "run a verification suite");
  sv->add_option("--suite", suite, "theorem2, lemmas, invariants or tables")->check(CLI::IsMember(suite_names()));
  add_common(sv, common);

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    fill_unset(sub, read_config(config_path, sub->get_name()));
    if (sub == sb) {
      require(sb, {"--d", "--alpha", "--N"});
      return cmd_bounds(bounds, common, out);
    }
    if (sub == st) {
      require(st, {"which"});
      return cmd_table(table, common, out);
    }
    if (sub == sg) return cmd_gap(gap, common, out);
    if (sub == ss) {
      require(ss, {"--d", "--alpha"});
      return cmd_spectrum(spec, common, out, err);
    }
    require(sv, {"--suite"});
    return cmd_verify(suite, common, out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericFailure& e) {
    diagnostic(err, to_string(e.kind()), e.what());
    return kNumeric;
  } catch (const std::exception& e) {
    diagnostic(err, "failure", e.what());
    return kNumeric;
  }
}

}  // namespace fraclap::cli
