#include <iostream>

#include "ana/cli.hpp"

int main(int argc, char** argv) {
    return ana::cli::run_cli(argc, argv, std::cout, std::cerr);
}
