#include "tweetpol/cli.hpp"

int main(int argc, char** argv) { return tweetpol::cli::run(argc, argv); }
