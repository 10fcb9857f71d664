#include "sstpca_cli/cli.hpp"

int main(int argc, char** argv) { return sstpca::cli_main(argc, argv); }
