#include <iostream>

#include "endolat/cli.hpp"

int main(int argc, char** argv) {
    return endolat::cli::run(argc, argv, std::cout, std::cerr);
}
