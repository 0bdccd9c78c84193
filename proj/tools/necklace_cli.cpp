// SPDX-License-Identifier: Apache-2.0
#include <necklace/cli.hpp>

#include <iostream>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return necklace::dispatch(args, std::cout, std::cerr);
}
