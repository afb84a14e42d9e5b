#include "sparsesel/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return sparsesel::cli::run(argc, argv, std::cout, std::cerr);
}
