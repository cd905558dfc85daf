#include <iostream>

#include "kflag/cli.hpp"

int main(int argc, char** argv) { return kflag::run_cli(argc, argv, std::cout, std::cerr); }
