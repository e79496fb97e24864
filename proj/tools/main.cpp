#include "domove/cli.hpp"

int main(int argc, char** argv) { return domove::cli_main(argc, argv); }
