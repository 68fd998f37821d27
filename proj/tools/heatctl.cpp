#include "heatctl/commands.hpp"

int main(int argc, char** argv) { return heatctl::cli::run(argc, argv); }
