#include <iostream>

#include "padicdyn/cli.hpp"

int main(int argc, char** argv) {
  return padicdyn::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
