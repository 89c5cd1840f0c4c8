#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace confalg {

/* Front end behind the `confalg` binary. Parses one subcommand, runs the
 * corresponding kernel, and writes the artifact to `out` or to --out FILE.
 * Returns the process exit status: 0 success, 1 usage error, 2 verification
 * violation (or verdict short of a certificate). Identical invocations
 * produce byte-identical artifacts. */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace confalg
