#include "qmap_cli.hpp"

int main(int argc, char** argv) { return qmap::cli::dispatch(argc, argv); }
