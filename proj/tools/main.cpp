#include <atomic>
#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {
std::atomic<bool> g_interrupted{false};
void handle_sigint(int) { g_interrupted.store(true); }
} // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, handle_sigint);
  std::vector<std::string> args(argv + 1, argv + argc);
  return kunzkit::cli::run(args, std::cout, std::cerr, &g_interrupted);
}
