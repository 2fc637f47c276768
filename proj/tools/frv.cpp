#include "frv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return frv::cli::main_entry(argc, argv, std::cout, std::cerr);
}
