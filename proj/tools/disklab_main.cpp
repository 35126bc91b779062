#include "disklab/cli.hpp"

int main(int argc, char** argv) { return disklab::run_cli(argc, argv); }
