#include "reprorl/error.hpp"

namespace reprorl {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_architecture: return "invalid-architecture";
    case Errc::shape: return "shape";
    case Errc::numeric: return "numeric";
    case Errc::episode_complete: return "episode-complete";
    case Errc::incomplete_trajectory: return "incomplete-trajectory";
    case Errc::empty_input: return "empty-input";
    case Errc::insufficient_data: return "insufficient-data";
    case Errc::invalid_config: return "invalid-config";
    case Errc::misuse: return "misuse";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace reprorl
