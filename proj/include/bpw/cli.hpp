// Command-line entry point (kept in the library so tests can drive it).
#pragma once

namespace bpw {

/// Runs one subcommand. Returns 0 on success, 1 on assertion/abort failure,
/// 2 on configuration error (unknown subcommand, bad flag, bad config file).
int cli_main(int argc, const char* const* argv);

}  // namespace bpw
