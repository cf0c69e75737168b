#ifndef S3POT_CONSTANTS_HPP
#define S3POT_CONSTANTS_HPP

#include <numbers>

namespace s3pot::constants {

inline constexpr double pi = std::numbers::pi;

// CODATA; MeV fm
inline constexpr double hbar_c_mev_fm = 197.3269804;

inline constexpr double mev2_to_gev2 = 1.0e-6;
inline constexpr double gev2_to_mev2 = 1.0e6;

}  // namespace s3pot::constants

#endif
