#include "casimir/cli.hpp"

int main(int argc, char** argv) { return casimir::cli_main(argc, argv); }
