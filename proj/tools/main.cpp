#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return et6::cli::dispatch(argc, argv, std::cout, std::cerr);
}
