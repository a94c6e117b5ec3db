#include "cli.hpp"

int main(int argc, char** argv) { return mzeta::cli::run(argc, argv, std::cout, std::cerr); }
