#pragma once

namespace casimir {

// exit codes: 0 success, 2 config error, 3 quadrature failure, 4 I/O error
int cli_main(int argc, const char* const* argv);

} // namespace casimir
