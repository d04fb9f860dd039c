#include <iostream>
#include <string>
#include <vector>

#include "rasaeco/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rasaeco::run(args, std::cout, std::cerr);
}
