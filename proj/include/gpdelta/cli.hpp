#pragma once

namespace gpdelta {

// Exit codes: 0 success, 1 validation failure, 2 numerical failure,
// 64 unknown flags or subcommand.
int cli_dispatch(int argc, char** argv);

}  // namespace gpdelta
