#include <iostream>

#include "rcloop_cli/cli.hpp"

int main(int argc, char** argv) { return rcloop::cli::run(argc, argv, std::cout, std::cerr); }
