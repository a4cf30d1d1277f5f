#include "garchlab/cli.hpp"

int main(int argc, char** argv) { return garchlab::cli::run(argc, argv); }
