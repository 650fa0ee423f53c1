#include <iostream>
#include <string>
#include <vector>

#include "p4c/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return p4c::run_cli(args, std::cout, std::cerr);
}
