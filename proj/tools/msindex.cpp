#include "msindex/cli.hpp"

int main(int argc, char** argv) { return msindex::cli::dispatch(argc, argv); }
