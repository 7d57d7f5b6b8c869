#include "cli.hpp"

int main(int argc, char** argv) { return orlicz::cli::main_cli(argc, argv); }
