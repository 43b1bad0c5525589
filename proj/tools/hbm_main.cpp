#include <iostream>

#include "hbm/harness.hpp"

int main(int argc, char** argv) { return hbm::harness::main_entry(argc, argv, std::cout, std::cerr); }
