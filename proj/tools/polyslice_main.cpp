#include "polyslice/cli.hpp"

int main(int argc, char** argv) { return polyslice::cli::run(argc, argv); }
