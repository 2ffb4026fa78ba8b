#include <iostream>
#include <string>
#include <vector>

#include "surp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return surp::run_cli(args, std::cout, std::cerr);
}
