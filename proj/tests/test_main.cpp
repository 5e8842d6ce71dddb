#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <iostream>

#include "necessity_guard.hpp"

int main(int argc, char** argv) {
  auto& guard = blockade::testing::NecessityGuard::instance();
  guard.install();

  doctest::Context context(argc, argv);
  const int rc = context.run();
  if (context.shouldExit()) return rc;

  std::cout << "necessity guard: " << guard.checked << " blocked instances checked, " << guard.exempt
            << " chord-blocked exempt, " << guard.violations.size() << " violations\n";
  for (const auto& v : guard.violations) std::cout << "  violation: " << v << '\n';
  return rc != 0 ? rc : (guard.violations.empty() ? 0 : 1);
}
