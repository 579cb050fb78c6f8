#include <iostream>

#include "bispec/cli.hpp"

int main(int argc, char** argv) {
    return bispec::cli::run_main(argc, argv, std::cout, std::cerr);
}
