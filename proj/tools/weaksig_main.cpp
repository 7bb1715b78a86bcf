#include "weaksig/cli_io.hpp"

int main(int argc, char** argv) { return weaksig::run_cli(argc, argv); }
