#include "cli.hpp"

int main(int argc, char** argv) { return graphopt::cli::run(argc, argv); }
