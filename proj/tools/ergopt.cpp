#include "ergopt/cli.hpp"

int main(int argc, char** argv) { return ergopt::run_cli(argc, argv); }
