#include "thorin/cli.hpp"

int main(int argc, char** argv) { return thorin::cli::main(argc, argv); }
