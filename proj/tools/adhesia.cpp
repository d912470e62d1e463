#include <iostream>

#include "adhesia/cli.hpp"

int main(int argc, char** argv) {
    return adhesia::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
