/**
 * @file flagtor.cpp
 * @brief Entry point of the flagtor command-line tool.
 */
#include "flagtor/cli.hpp"

int main(int argc, char** argv) { return flagtor::cli::run(argc, argv); }
