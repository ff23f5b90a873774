#include <iostream>

#include "sigenum/cli.hpp"

int main(int argc, char** argv) { return sigenum::cli::run(argc, argv, std::cout, std::cerr); }
