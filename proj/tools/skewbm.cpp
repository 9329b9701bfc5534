#include <iostream>

#include "skewbm/cli.hpp"

int main(int argc, char** argv) { return skewbm::cli::run(argc, argv, std::cout, std::cerr); }
