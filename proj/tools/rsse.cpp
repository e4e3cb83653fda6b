#include "rsse/cli.hpp"

int main(int argc, char** argv) { return rsse::cli::run(argc, argv); }
