#include "bwave/tools/cli.hpp"

int main(int argc, char** argv) { return bwave::tools::run(argc, argv); }
