#include <iostream>

#include "l1sec/cli.hpp"

int main(int argc, char** argv) { return l1sec::cli::run(argc, argv, std::cout, std::cerr); }
