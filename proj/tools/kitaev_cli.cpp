#include "kitaev/io.hpp"

int main(int argc, char** argv) { return kitaev::cli_main(argc, argv); }
