#pragma once

#include <iosfwd>

// End-to-end verification gates: ten behavioral criteria covering the
// closed forms, the Monte Carlo ground truth, their agreement, and the
// reproducibility contract. Each criterion prints one PASS/FAIL line with
// its measured margin; the return value is the number of failures.

namespace terascope {

struct AcceptanceOptions {
  int threads = 1;  // thread count for trial batches; never changes values
};

int run_acceptance(std::ostream& out, const AcceptanceOptions& options = {});

}  // namespace terascope
