#pragma once

namespace recpart {

// Entry point for the command-line tool.  Returns the process exit code:
// 0 on success, 1 on input/output failures, 2 on configuration errors.
int run_cli(int argc, char** argv);

}  // namespace recpart
