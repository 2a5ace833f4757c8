#pragma once

namespace olive {

// Entry point for the olivegen tool. Exit codes: 0 success, 1 usage error,
// 2 runtime error.
int cli_main(int argc, const char* const* argv);

} // namespace olive
