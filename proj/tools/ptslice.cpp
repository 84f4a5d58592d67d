#include "ptorus/cli.hpp"

int main(int argc, char** argv) { return ptorus::cli::run(argc, argv); }
