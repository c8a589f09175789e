#include "newform_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace mverify::newform_io {

namespace {

std::string join(const std::string& source, const std::vector<std::string>& items) {
  std::string msg = source + ": " + std::to_string(items.size()) + " problem(s)";
  for (const auto& i : items) msg += "\n  " + i;
  return msg;
}

bool looks_decimal(const std::string& s) { return s.find_first_of(".eE") != std::string::npos; }

}  // namespace

IngestError::IngestError(const std::string& source, std::vector<std::string> items)
    : std::runtime_error(join(source, items)), items_(std::move(items)) {}

modforms::Eigenform parse_newform(std::istream& in, const std::string& source) {
  std::vector<std::string> problems;
  int weight = 0, level = 0;
  std::string label;
  bool header = false;
  std::vector<std::string> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string kv;
      while (hs >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        try {
          if (key == "weight") weight = std::stoi(val), header = true;
          else if (key == "level") level = std::stoi(val);
          else if (key == "label") label = val;
        } catch (const std::exception&) {
          problems.push_back("line " + std::to_string(lineno) + ": bad header value " + kv);
        }
      }
      continue;
    }
    std::istringstream ls(line);
    long n;
    std::string a, extra;
    if (!(ls >> n >> a) || (ls >> extra)) {
      problems.push_back("line " + std::to_string(lineno) + ": expected \"n<TAB>a_n\"");
      continue;
    }
    const long want = static_cast<long>(values.size()) + 1;
    if (n != want) {
      problems.push_back("line " + std::to_string(lineno) + ": n = " + std::to_string(n) +
                         ", expected " + std::to_string(want));
      continue;
    }
    values.push_back(a);
  }
  if (!header) problems.push_back("missing \"# weight=.. level=..\" header");
  if (level < 1) problems.push_back("level must be a positive integer");
  if (values.empty()) problems.push_back("no coefficient rows");
  if (!problems.empty()) throw IngestError(source, problems);
  if (label.empty()) label = std::to_string(level) + "." + std::to_string(weight);

  bool inexact = false;
  for (const auto& v : values) inexact = inexact || looks_decimal(v);
  std::vector<double> approx(values.size() + 1, 0.0);
  std::vector<series::Rational> exact(values.size() + 1, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string& v = values[i];
    try {
      std::size_t used = 0;
      approx[i + 1] = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      if (!inexact && exact[i + 1].set_str(v, 10) != 0) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      problems.push_back("a(" + std::to_string(i + 1) + ") = \"" + v + "\" is not a number");
    }
  }
  if (!problems.empty()) throw IngestError(source, problems);
  if (approx[1] != 1.0 || (!inexact && exact[1] != 1))
    throw IngestError(source, {"a(1) = " + values[0] + ", expected 1"});

  const auto form = inexact ? modforms::Eigenform::inexact(weight, level, label, approx)
                            : modforms::Eigenform(weight, level, label,
                                                  series::QSeries::from_rationals(exact));
  for (const auto& f : modforms::check_multiplicativity(form)) {
    const long mn = static_cast<long>(f.m) * f.n;
    if (std::gcd(f.m, f.n) == 1)
      problems.push_back("multiplicativity fails at (" + std::to_string(f.m) + ", " +
                         std::to_string(f.n) + "): a(" + std::to_string(mn) + ") != a(" +
                         std::to_string(f.m) + ") a(" + std::to_string(f.n) + ")");
    else
      problems.push_back("prime-power recursion fails at p = " + std::to_string(f.n) +
                         ", index " + std::to_string(mn));
  }
  for (int p : modforms::deligne_violations(form, form.order()))
    problems.push_back("Deligne bound |a(p)| <= 2 p^{(k-1)/2} violated at p = " + std::to_string(p));
  if (!problems.empty()) throw IngestError(source, problems);
  return form;
}

modforms::Eigenform ingest_newform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError(path, {"cannot open file"});
  return parse_newform(in, path);
}

void serialize_newform(std::ostream& out, const modforms::Eigenform& f) {
  out << "# weight=" << f.weight() << " level=" << f.level() << " label=" << f.label() << "\n";
  const bool exact = f.field() == modforms::Eigenform::Field::Rational;
  for (int n = 1; n <= f.order(); ++n) {
    out << n << '\t';
    if (exact) {
      out << f.rational_series().coeff(n).get_str();
    } else {
      std::ostringstream s;
      s << std::setprecision(17) << f.coeff(n);
      std::string v = s.str();
      if (!looks_decimal(v)) v += ".0";
      out << v;
    }
    out << '\n';
  }
}

void write_newform(const std::string& path, const modforms::Eigenform& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  serialize_newform(out, f);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace mverify::newform_io
