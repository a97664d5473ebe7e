#pragma once

#include <cstddef>

namespace sepcode {

/// |S| <= kSeparatorConstant * sqrt(n) for every separator returned by planar_separator.
inline constexpr double kSeparatorConstant = 4.0;

/// Envelope for |V0|, p and the boundary sum of a separation:
/// ceil(n / l^1.5) + kEnvelopeConstant * sqrt(n).
inline constexpr double kEnvelopeConstant = 4.0;

/// |fix| <= kFixConstant * (number of boundary nodes) for the triangulation patcher:
/// at most 3|N| edges among boundary nodes plus one chord per hole corner, and
/// hole corners number at most twice those edges.
inline constexpr double kFixConstant = 9.0;

/// Default upper bound on the part size handled by a lookup table.
inline constexpr std::size_t kDefaultMaxCap = 10;

/// Largest caps each enumerator accepts regardless of --max-cap.
inline constexpr std::size_t kPlanarCapLimit = 8;
inline constexpr std::size_t kForestCapLimit = 16;
inline constexpr std::size_t kTriangulationCapLimit = 13;
/// Caps accepted when reading a table blob; symbols are stored in a byte.
inline constexpr std::size_t kMaxStoredCap = 64;

} // namespace sepcode
