#include <iostream>
#include <string>
#include <vector>

#include "ofd/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ofd::cli::main(args, std::cout, std::cerr);
}
