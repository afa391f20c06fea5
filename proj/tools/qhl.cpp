#include "qhl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qhl::run(argc, argv, std::cout, std::cerr); }
