#include "geoflow/commands.hpp"

int main(int argc, char** argv) { return geoflow::cli::run(argc, argv); }
