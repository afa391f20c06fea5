#pragma once

// Command-line dispatcher. Exit codes: 0 success, 1 verified negative
// (insoluble, inadmissible, not split, failed verification), 2 usage or
// precondition error, 3 internal error.

#include <ostream>

namespace qhl {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qhl
