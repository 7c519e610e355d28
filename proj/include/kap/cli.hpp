#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kap::cli {

/**
 * Runs one CLI invocation. Exit codes: 0 success (member / verified),
 * 2 point not in the image (violations reported on `err`), 1 usage or
 * I/O errors. Output is byte-deterministic for identical argv.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kap::cli
