#include <iostream>

#include "hmgf/commands.hpp"

int main(int argc, char** argv) { return hmgf::run_cli(argc, argv, std::cout, std::cerr); }
