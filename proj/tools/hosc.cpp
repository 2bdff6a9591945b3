#include "hosc_cli.hpp"

int main(int argc, char** argv) { return hosc::cli::run(argc, argv); }
