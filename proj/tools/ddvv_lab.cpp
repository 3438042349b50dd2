#include <iostream>

#include "ddvv/app.hpp"

int main(int argc, char** argv) { return ddvv::run_cli(argc, argv, std::cout, std::cerr); }
