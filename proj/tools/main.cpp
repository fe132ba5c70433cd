#include "cli.hpp"

int main(int argc, char** argv) { return quatem::cli::run(argc, argv); }
