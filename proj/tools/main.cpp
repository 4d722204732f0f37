#include "lgrpo/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return lgrpo::run_cli(argc, argv, std::cout, std::cerr);
}
