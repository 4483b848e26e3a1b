// Command-line surface: state I/O, dispatch to every core module, the
// function-comparison table and the reduced property selftest.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qht::cli {

/// Parse and execute one command line (program name excluded). Returns 0 on
/// success, 2 on validation errors; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct FigRow {
  double x;
  double inv_neg_log;         // 1/(−ln x); 0 at the x→0 limit row
  double inv_two_one_minus_sqrt;  // 1/(2(1−√x)); 1/2 at the limit row
  double gap;
};
/// Comparison table for 1/(−ln x) vs 1/(2(1−√x)); the first row is the
/// x→0 limit row, the rest sample the open interval (0,1).
std::vector<FigRow> fig_compare(int grid_points);

struct SelftestCheck {
  std::string name;
  bool pass = false;
  long long cases = 0;
  std::string detail;
};
/// Reduced-seed property suite over random state pairs: the divergence
/// relation inequalities and the sample-complexity sandwiches. Returns one
/// entry per named inequality.
std::vector<SelftestCheck> run_selftest(int pairs, unsigned seed);

}  // namespace qht::cli
