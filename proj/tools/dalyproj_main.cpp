#include <iostream>

#include "dalyproj/cli.hpp"

int main(int argc, char** argv) {
    return dalyproj::cli::run(argc, argv, std::cout, std::cerr);
}
