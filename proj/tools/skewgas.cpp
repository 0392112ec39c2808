#include "skewgas/cli.hpp"

int main(int argc, char** argv) { return skewgas::cli::run(argc, argv); }
