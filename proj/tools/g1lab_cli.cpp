#include "g1lab/cli.hpp"

int main(int argc, char** argv) { return g1lab::cli::run(argc, argv); }
