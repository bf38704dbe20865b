#pragma once

namespace ordeval {

// Full command-line entry point (analyze / rank / classify / simulate /
// render / verify). Exposed as a library call so tests can exercise the CLI
// in-process. Exit codes: 0 success, 1 internal failure, 2 input or
// configuration error, 3 verification mismatch.
int run_cli(int argc, const char* const* argv);

}  // namespace ordeval
