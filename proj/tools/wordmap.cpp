#include <iostream>

#include "wordmap/cli.hpp"

int main(int argc, char** argv) {
  return wordmap::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
