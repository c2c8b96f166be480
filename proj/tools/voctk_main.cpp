#include "voctk/cli.hpp"

int main(int argc, char** argv) { return voctk::run_cli(argc, argv); }
