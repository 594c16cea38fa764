#include "nsmop/cli.hpp"

int main(int argc, char** argv) { return nsmop::cli::run(argc, argv); }
