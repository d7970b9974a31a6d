#include "boettcher/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return boettcher::cli::run(argc, argv, std::cout, std::cerr); }
