#include "cli/run.hpp"

int main(int argc, char** argv) { return clogfuse::cli::run(argc, argv); }
