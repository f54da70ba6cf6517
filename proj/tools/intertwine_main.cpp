#include <iostream>

#include "intertwine/cli.hpp"

int main(int argc, char** argv) {
    return intertwine::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
