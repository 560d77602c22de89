#include "resdist/distribution.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "resdist/error.hpp"

namespace resdist {

const char* to_string(Distribution::Kind k) {
  return k == Distribution::Kind::Exact ? "Exact" : "OverApprox";
}

void write_csv(const Distribution& d, std::ostream& os) {
  os << "# mass=" << d.mass.str() << " kind=" << to_string(d.kind) << "\n";
  os << "z,probability_num,probability_den,probability_float\n";
  for (const auto& [z, p] : d.support)
    os << z.str() << ',' << p.numerator().str() << ',' << p.denominator().str() << ','
       << to_decimal_12(p) << "\n";
}

void write_csv_file(const Distribution& d, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrKind::Io, "cannot open '" + path + "' for writing");
  write_csv(d, os);
}

Distribution read_csv(std::istream& is) {
  Distribution d;
  std::string line;
  bool have_kind = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto kpos = line.find("kind=");
      if (kpos != std::string::npos) {
        std::string k = line.substr(kpos + 5);
        while (!k.empty() && isspace(static_cast<unsigned char>(k.back()))) k.pop_back();
        if (k == "Exact") d.kind = Distribution::Kind::Exact;
        else if (k == "OverApprox") d.kind = Distribution::Kind::OverApprox;
        else fail(ErrKind::Syntax, "unknown distribution kind '" + k + "'");
        have_kind = true;
      }
      continue;
    }
    if (line.rfind("z,", 0) == 0) continue;  // header
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    if (cols.size() < 3) fail(ErrKind::Syntax, "bad distribution row '" + line + "'");
    d.add(Int(cols[0]), Rational(Int(cols[1]), Int(cols[2])));
  }
  if (!have_kind) fail(ErrKind::Syntax, "distribution file lacks a '# mass=... kind=...' line");
  return d;
}

Distribution read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrKind::Io, "cannot open '" + path + "'");
  return read_csv(is);
}

void emit_plot_data(const Distribution& d, std::ostream& os) {
  os << "z value\n";
  for (const auto& [z, p] : d.support) os << z.str() << ' ' << to_decimal_12(p) << "\n";
}

void emit_plot_data_file(const Distribution& d, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrKind::Io, "cannot open '" + path + "' for writing");
  emit_plot_data(d, os);
}

std::pair<Rational, Rational> expected_value_bounds(const Distribution& d) {
  if (d.support.empty()) fail(ErrKind::EmptySupport, "expected value of an empty distribution");
  if (d.kind == Distribution::Kind::Exact) {
    if (d.mass > Rational(1)) fail(ErrKind::Internal, "exact distribution with mass > 1");
    Rational e(0);
    for (const auto& [z, p] : d.support) e += Rational(z) * p;
    if (d.mass == Rational(1)) return {e, e};
    // Unaccounted (non-terminating) mass could sit anywhere in the support.
    Rational slack = Rational(1) - d.mass;
    return {e + slack * Rational(d.support.begin()->first),
            e + slack * Rational(d.support.rbegin()->first)};
  }
  // Each entry bounds the true probability from above and the true mass is 1:
  // fill greedily from the smallest values for the lower bound, from the
  // largest for the upper bound.
  auto greedy = [&](bool ascending) {
    Rational remaining(1);
    Rational acc(0);
    auto step = [&](const Int& z, const Rational& p) {
      if (remaining.is_zero()) return;
      Rational take = std::min(std::min(p, Rational(1)), remaining);
      acc += Rational(z) * take;
      remaining -= take;
    };
    if (ascending)
      for (const auto& [z, p] : d.support) step(z, p);
    else
      for (auto it = d.support.rbegin(); it != d.support.rend(); ++it) step(it->first, it->second);
    if (!remaining.is_zero())
      acc += remaining * Rational(ascending ? d.support.begin()->first : d.support.rbegin()->first);
    return acc;
  };
  return {greedy(true), greedy(false)};
}

}  // namespace resdist
