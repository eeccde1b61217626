#include <iostream>

#include "frachjb_cli/cli.hpp"

int main(int argc, char** argv) { return frachjb::cli::run(argc, argv, std::cout, std::cerr); }
