#include "fsochan/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return fsochan::cli::run(argc, argv, std::cout, std::cerr);
}
