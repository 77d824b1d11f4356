#include <iostream>

#include "nsdecay_cli/app.hpp"

int main(int argc, char** argv) { return nsdecay::cli::run_cli(argc, argv, std::cout, std::cerr); }
