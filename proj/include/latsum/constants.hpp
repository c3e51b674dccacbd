#pragma once

#include <numbers>

namespace latsum {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

// First Stieltjes constant, standard sign convention:
//   zeta(1+e) = 1/e + gamma - gamma_1 * e + O(e^2),  gamma_1 < 0.
inline constexpr double kStieltjesGamma1 =
    -0.07281584548367672486058637587490131913773633833433795259900655;

// Catalan's constant G = L_{-4}(2).
inline constexpr double kCatalan =
    0.91596559417721901505460351493238411077414937428167213426649812;

} // namespace latsum
