#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace armchair::cli {

// Batch front-end: parse flags (and an optional JSON config; flags win),
// dispatch to bands / resonances / flatbands / verify, serialize results.
// Returns 0 on success, 1 on usage errors, 2 on numerical failure. Output
// ordering is deterministic (by k, then by position), independent of
// ARMCHAIR_THREADS.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace armchair::cli
