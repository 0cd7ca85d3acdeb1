#pragma once

// The pfid command-line surface.
//
// Exit codes: 0 ok, 2 usage or input error, 3 dimension mismatch,
// 4 property failure (the report is still printed).

#include <ostream>
#include <string>
#include <vector>

namespace pfid {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// PFID_TOLERANCE_SCALE, default 1. Unparseable or non-positive values are a
/// usage error.
double tolerance_scale_from_env();

}  // namespace pfid
