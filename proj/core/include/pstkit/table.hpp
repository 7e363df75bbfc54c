#pragma once

#include <string>
#include <vector>

#include "pstkit/transfer.hpp"

namespace pst {

/// One reproduced row of the known-results table.
struct TableRow {
  std::string family;
  std::string instance;
  Verdict expected = Verdict::unknown;
  Verdict observed = Verdict::unknown;
  std::string method;
  std::string time;       ///< exact time when one was found, else empty
  double fidelity = 0.0;  ///< |F| at that time, or the scan maximum
  std::string note;

  bool matches() const noexcept { return expected == observed; }
};

/// Builds and checks the eight bundled instances. Each row is decided by the
/// matching condition checker or certificate and confirmed numerically.
std::vector<TableRow> pst_table();

}  // namespace pst
