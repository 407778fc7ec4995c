#ifndef FQG_REPORT_HPP
#define FQG_REPORT_HPP

#include "fqg/linop.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace fqg {

/// One named residual. Pass/fail is derived from the tolerance at print
/// time; the report itself only records numbers.
struct Check {
  std::string axiom;
  double residual = 0.0;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string axiom, double residual) { checks.push_back({std::move(axiom), residual}); }

  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& c : other.checks) checks.push_back({prefix + c.axiom, c.residual});
  }

  double max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.residual);
    return m;
  }

  bool pass(double tol = kTol) const { return max_residual() < tol; }

  void sort() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const Check& a, const Check& b) { return a.axiom < b.axiom; });
  }
};

}  // namespace fqg

#endif
