#ifndef RESDIST_DISTRIBUTION_HPP
#define RESDIST_DISTRIBUTION_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <utility>

#include "resdist/rational.hpp"

namespace resdist {

/// Tabulated probability mass function over integer outputs.
struct Distribution {
  enum class Kind { Exact, OverApprox };

  std::map<Int, Rational> support;  // only non-zero entries
  Rational mass;                    // sum of support values
  Kind kind = Kind::Exact;

  void add(const Int& z, const Rational& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = support.emplace(z, p);
    if (!fresh) it->second += p;
    mass += p;
  }

  Rational at(const Int& z) const {
    auto it = support.find(z);
    return it == support.end() ? Rational(0) : it->second;
  }
};

const char* to_string(Distribution::Kind k);

/// CSV with a leading `# mass=... kind=...` line, then
/// `z,probability_num,probability_den,probability_float` rows sorted by z.
void write_csv(const Distribution& d, std::ostream& os);
void write_csv_file(const Distribution& d, const std::string& path);
Distribution read_csv(std::istream& is);
Distribution read_csv_file(const std::string& path);

/// Two-column `z value` rows for plotting; values as 12-digit decimals.
void emit_plot_data(const Distribution& d, std::ostream& os);
void emit_plot_data_file(const Distribution& d, const std::string& path);

/// Interval bracketing the expected value. Exact mass-1 distributions give a
/// point; over-approximations reallocate the slack pessimistically toward the
/// extremes of the support, reading each entry as a Def-4 pointwise bound.
std::pair<Rational, Rational> expected_value_bounds(const Distribution& d);

}  // namespace resdist

#endif
