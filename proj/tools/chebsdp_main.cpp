#include "chebsdp/cli.hpp"

int main(int argc, char** argv) { return chebsdp::run_cli(argc, argv); }
