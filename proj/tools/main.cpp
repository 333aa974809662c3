#include <string>
#include <vector>

#include "minstab/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return minstab::run_cli(std::move(args));
}
