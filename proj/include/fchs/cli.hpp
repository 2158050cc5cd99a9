#pragma once

namespace fchs {

/// Exit codes: 0 success, 1 failed check, 2 configuration error, 3 blow-up.
int cli_main(int argc, char** argv);

}  // namespace fchs
