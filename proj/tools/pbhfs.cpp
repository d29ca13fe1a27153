#include "pbhfs/cli.hpp"

int main(int argc, char** argv) { return pbhfs::run_cli(argc, argv); }
