// main.cpp — executable entry point
#include <string>
#include <vector>

#include "focklsi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return focklsi::cli::run(args);
}
