#include "irisdd/cli.hpp"

int main(int argc, char** argv) { return irisdd::cli::main(argc, argv); }
