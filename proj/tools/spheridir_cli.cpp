#include "spheridir/cli.hpp"

int main(int argc, char** argv) { return spheridir::run_cli(argc, argv); }
