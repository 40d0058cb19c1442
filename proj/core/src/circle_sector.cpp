#include "hgs/circle_sector.hpp"

namespace hgs {

void CircleSector::extend(int angle) {
  if (encloses(angle)) return;
  if (positive_mod(angle - end) <= positive_mod(start - angle)) {
    end = angle;
  } else {
    start = angle;
  }
}

bool sectors_overlap(const CircleSector& a, const CircleSector& b) {
  return CircleSector::positive_mod(b.start - a.start) <= CircleSector::positive_mod(a.end - a.start) ||
         CircleSector::positive_mod(a.start - b.start) <= CircleSector::positive_mod(b.end - b.start);
}

}  // namespace hgs
