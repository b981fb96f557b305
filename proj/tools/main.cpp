#include <exception>
#include <iostream>

#include "ptkitaev/cli.hpp"

int main(int argc, char** argv) {
    try {
        return ptkitaev::run_cli(argc, argv, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << '\n';
        return 2;
    }
}
