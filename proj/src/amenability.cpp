#include "conclab/amenability.hpp"

namespace conclab::amenability {

std::string to_string(Essentiality e) {
  switch (e) {
    case Essentiality::essential: return "essential";
    case Essentiality::not_essential: return "not_essential";
    case Essentiality::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace conclab::amenability
