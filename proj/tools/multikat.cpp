#include <iostream>

#include "multikat/workbench.hpp"

int main(int argc, char** argv) { return multikat::run_cli(argc, argv, std::cout, std::cerr); }
