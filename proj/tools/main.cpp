#include "condlen/cli.hpp"

int main(int argc, char** argv) { return condlen::run(argc, argv); }
