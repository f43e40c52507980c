#include <iostream>

#include "besselstop/cli.hpp"

int main(int argc, char** argv) {
    return besselstop::main_entry(argc, argv, std::cout, std::cerr);
}
