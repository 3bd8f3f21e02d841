#include <iostream>

#include "risfox/cli/app.hpp"

int main(int argc, char** argv) { return risfox::cli::run(argc, argv, std::cout, std::cerr); }
