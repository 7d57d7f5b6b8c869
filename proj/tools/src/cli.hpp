#pragma once

namespace orlicz::cli {

// Whole command line; returns the process exit code (0 pass, 1 failure, 2 usage).
int main_cli(int argc, char** argv);

}  // namespace orlicz::cli
