#include "bpw/cli.hpp"

int main(int argc, char** argv) { return bpw::cli_main(argc, argv); }
