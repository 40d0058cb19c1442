#pragma once

namespace hgs {

/// Arc of the circle of 16-bit polar angles, spanning clockwise-increasing
/// angles from `start` to `end` modulo 65536.
struct CircleSector {
  int start = 0;
  int end = 0;

  static int positive_mod(int i) { return (i % 65536 + 65536) % 65536; }

  static CircleSector at(int angle) { return {angle, angle}; }

  bool encloses(int angle) const { return positive_mod(angle - start) <= positive_mod(end - start); }

  /// Grows the sector by the smaller of the two possible arcs to include `angle`.
  void extend(int angle);
};

/// True iff the two arcs share at least one angle (enclosure included).
bool sectors_overlap(const CircleSector& a, const CircleSector& b);

}  // namespace hgs
