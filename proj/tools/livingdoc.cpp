#include "livingdoc/cli.hpp"

int main(int argc, char** argv) { return livingdoc::cli::run(argc, argv); }
