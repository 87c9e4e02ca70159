#include "ncgalois/cli.hpp"

int main(int argc, char** argv) { return ncgalois::cli::main(argc, argv); }
