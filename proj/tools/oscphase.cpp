#include <iostream>

#include "oscphase/cli.hpp"

int main(int argc, char** argv) { return oscphase::cli::main_entry(argc, argv, std::cout, std::cerr); }
