#include <iostream>

#include "itr/cli.hpp"

int main(int argc, char** argv) { return itr::cli::run(argc, argv, std::cout, std::cerr); }
