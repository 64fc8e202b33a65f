#include "ptide/runners.hpp"

int main(int argc, char** argv) { return ptide::run_cli(argc, argv); }
