#include <iostream>

#include "bcsim/harness.hpp"

int main(int argc, char** argv) { return bcsim::run_cli(argc, argv, std::cout, std::cerr); }
