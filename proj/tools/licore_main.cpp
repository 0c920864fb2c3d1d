// licore_main.cpp - entry point of the licore command-line tool

#include <iostream>
#include <string>
#include <vector>

#include "licore/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return licore::cli::run(args, std::cout, std::cerr);
}
