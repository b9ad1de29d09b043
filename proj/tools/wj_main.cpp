#include <iostream>

#include "wj/cli.hpp"

int main(int argc, char** argv) { return wj::cli::run(argc, argv, std::cout, std::cerr); }
