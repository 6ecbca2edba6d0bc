#include <iostream>

#include "tnlab/app/commands.hpp"

int main(int argc, char** argv) { return tnlab::app::run(argc, argv, std::cout, std::cerr); }
