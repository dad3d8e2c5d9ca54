#include "se2sr/cli.hpp"

int main(int argc, char** argv) { return se2sr::run(argc, argv); }
