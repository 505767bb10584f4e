#include "fracbern/cli.hpp"

int main(int argc, char** argv) { return fracbern::cli_main(argc, argv); }
