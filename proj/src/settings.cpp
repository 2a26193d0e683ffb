#include "qidlab/settings.hpp"

namespace qidlab {

Settings& settings() {
  static Settings s;
  return s;
}

void reset_settings() { settings() = Settings{}; }

}  // namespace qidlab
