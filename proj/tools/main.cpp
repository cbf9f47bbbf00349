#include "nse/cli.hpp"

int main(int argc, char** argv) { return nse::run_cli(argc, argv); }
