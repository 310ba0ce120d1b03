#include "conetest/cli.hpp"

int main(int argc, char** argv) { return conetest::cli_main(argc, argv); }
