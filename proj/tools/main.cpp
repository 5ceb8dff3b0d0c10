#include <iostream>

#include "camc/cli.hpp"

int main(int argc, char** argv) { return camc::main_entry(argc, argv, std::cout, std::cerr); }
