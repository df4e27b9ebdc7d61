#include <iostream>

#include "hog_cli.hpp"

int main(int argc, char** argv) {
  return hog::cli::run(argc, argv, std::cout, std::cerr);
}
