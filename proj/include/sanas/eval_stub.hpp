#pragma once

#include <iosfwd>

#include "sanas/evaluation.hpp"

namespace sanas {

// stdin/stdout half of the line-delimited JSON evaluation protocol, answering
// with synthetic accuracies. The fault-injection knobs exist to exercise the
// parent's reordering and retry paths:
//   shuffle_window — buffer W responses, emit them in reverse order
//                    (leftovers flushed reversed at EOF);
//   drop_once      — swallow the drop_once-th well-formed request (0-based)
//                    the first time it arrives, answer any re-send.
// A malformed request line is answered with {"error":...} and skipped; the
// loop survives. Returns the process exit code.
struct StubOptions {
    SyntheticConfig synthetic;
    int shuffle_window = 0;  // <= 1 means no buffering
    long drop_once = -1;     // < 0 disables
};

int run_eval_stub(const StubOptions& opt, std::istream& in, std::ostream& out);

} // namespace sanas
