#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <string>

// Path of the cup binary under test, handed over by ctest.
std::string g_cup_bin;

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (argv[i][0] != '-') g_cup_bin = argv[i];
  }
  doctest::Context context;
  context.applyCommandLine(1, argv);
  return context.run();
}
