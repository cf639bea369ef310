#include <iostream>
#include <string>
#include <vector>

#include "vosedge/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return vosedge::cli::main(args, std::cout, std::cerr);
}
