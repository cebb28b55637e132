#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace becsim::acceptance {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Options {
    bool full = false;            ///< add refinement/sweep studies
    std::string out_dir = "acceptance_out";
    double tol_scale = 1.0;
    bool determinism = true;      ///< run the verify-twice byte comparison
};

/// Runs the whole verification suite and returns one result per criterion.
std::vector<CriterionResult> run_all(const Options& opts);

/// Prints one pass/fail line per criterion, writes the scoreboard CSV, and
/// returns the process exit code (0 iff everything passed).
int report(const std::vector<CriterionResult>& results, const std::string& out_dir,
           std::ostream& os);

}  // namespace becsim::acceptance
