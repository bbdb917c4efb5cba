#include "subconflict/common.hpp"

#include <atomic>
#include <iostream>

namespace subconflict {

namespace {
std::atomic<bool> g_warnings{true};
}

void warn(std::string_view message) {
  if (g_warnings.load()) std::cerr << "warning: " << message << '\n';
}

void set_warnings_enabled(bool enabled) { g_warnings.store(enabled); }

}  // namespace subconflict
