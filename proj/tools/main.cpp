#include <iostream>
#include <string>
#include <vector>

#include "cea/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cea::run_cli(args, std::cout, std::cerr);
}
