#include "boxrevive/cli.hpp"

int main(int argc, char** argv) { return boxrevive::cli::run(argc, argv); }
