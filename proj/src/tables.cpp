#include "fraclap/tables.hpp"

#include "fraclap/errors.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

namespace fraclap {

namespace detail {
extern const char* const kReferenceCsv;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  return out;
}

std::vector<ReferenceCell> parse_reference() {
  std::vector<ReferenceCell> cells;
  std::istringstream is(detail::kReferenceCsv);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 7) throw std::runtime_error("reference table: malformed row " + line);
    cells.push_back({std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3]), f[4], f[5], f[6]});
  }
  return cells;
}

int decimals_of(const std::string& s) {
  auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

// mantissa digits and decimal exponent of "d.ddde+XX" into plain positional form
std::string positional(const std::string& sci) {
  auto e = sci.find('e');
  std::string mant = sci.substr(0, e);
  const int exp10 = std::stoi(sci.substr(e + 1));
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string digits;
  for (char c : mant)
    if (c != '.') digits += c;
  const int point = 1 + exp10;  // digits before the decimal point
  std::string out;
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
  } else if (point >= static_cast<int>(digits.size())) {
    out = digits + std::string(static_cast<std::size_t>(point) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<std::size_t>(point)) + "." + digits.substr(static_cast<std::size_t>(point));
  }
  return sign + out;
}

}  // namespace

const std::vector<ReferenceCell>& reference_tables() {
  static const std::vector<ReferenceCell> cells = parse_reference();
  return cells;
}

std::vector<ReferenceCell> reference_table(int which) {
  if (which < 1 || which > 4) throw DomainError("table must be 1..4");
  std::vector<ReferenceCell> out;
  for (const auto& c : reference_tables())
    if (c.table == which) out.push_back(c);
  return out;
}

std::string render_bound(const Real& x, int digits, bool upper) {
  if (digits < 1) throw DomainError("digits must be >= 1");
  if (!x.is_finite()) return x.to_string();
  if (x.is_zero()) return "0";
  const std::string sci = x.to_string(digits, upper ? MPFR_RNDU : MPFR_RNDD);
  const int exp10 = std::stoi(sci.substr(sci.find('e') + 1));
  // keep scientific notation far from unity
  if (exp10 < -6 || exp10 >= digits + 6) return sci;
  return positional(sci);
}

std::string render_fixed(const Real& x, int decimals, bool upper) {
  return x.to_fixed(decimals, upper ? MPFR_RNDU : MPFR_RNDD);
}

std::string render_radius(const Real& rad) {
  if (rad.is_zero()) return "0";
  return rad.to_string(3, MPFR_RNDU);
}

long long units_apart(const std::string& computed, const std::string& printed) {
  const bool ci = computed == "inf", pi = printed == "inf";
  if (ci || pi) return ci == pi ? 0 : kUnitsInfinite;
  const int k = decimals_of(printed);
  if (decimals_of(computed) != k) throw DomainError("units_apart: decimals differ: " + computed + " vs " + printed);
  auto scaled = [](std::string s) {
    s.erase(std::remove(s.begin(), s.end(), '.'), s.end());
    return std::stoll(s);
  };
  return scaled(computed) - scaled(printed);
}

bool TableCell::matches() const {
  auto ok = [](long long u) { return u != kUnitsInfinite && u >= -1 && u <= 1; };
  return ok(lower_units) && ok(upper_units);
}

std::vector<TableCell> compute_table(int which, Precision precision, double tol) {
  std::vector<ReferenceCell> refs = reference_table(which);
  const int m = static_cast<int>(refs.size());
  std::vector<TableCell> cells(refs.size());
  std::vector<std::exception_ptr> errs(refs.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < m; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      const ReferenceCell& ref = refs[k];
      BoundsResult r = radial_bounds(ProblemParams::make(ref.d, ref.alpha, ref.N, precision, tol), ref.n);
      TableCell& c = cells[k];
      c.ref = ref;
      c.bound = r.entries[static_cast<std::size_t>(ref.n)];
      c.precision = r.params.precision;
      c.lower = render_fixed(c.bound.lower, decimals_of(ref.lower), false);
      c.upper = render_fixed(c.bound.upper, decimals_of(ref.upper), true);
      c.lower_units = units_apart(c.lower, ref.lower);
      c.upper_units = units_apart(c.upper, ref.upper);
    } catch (...) {
      errs[k] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return cells;
}

}  // namespace fraclap
