#include <iostream>

#include "latsamp/cli.hpp"

int main(int argc, char** argv) { return latsamp::cli::run(argc, argv, std::cout, std::cerr); }
