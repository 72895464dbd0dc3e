// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "fbrelay/cli.hpp"

int main(int argc, char** argv) {
    return fbrelay::run_cli(argc, argv, std::cout, std::cerr);
}
