#pragma once

#include <ostream>

#include "antisym/io.hpp"

namespace antisym::cli {

/// Executes one configured run: writes artifacts, prints a JSON summary to `out`.
/// Returns 0 when every internal check passed, 1 otherwise; throws on usage or numerical errors.
int run(const RunConfig& config, std::ostream& out);

/// Parses flags (and an optional --config file) and runs; maps errors to exit codes 0/1/2.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace antisym::cli
