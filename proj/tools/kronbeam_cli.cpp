#include "kronbeam/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kronbeam::cli::run(argc, argv, std::cout, std::cerr); }
