#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return levikit::tools::dispatch(argc, argv, std::cout, std::cerr); }
