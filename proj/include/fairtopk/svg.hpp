#pragma once

#include <iosfwd>

#include "fairtopk/experiments.hpp"

namespace fairtopk {

/// Trade-off curve: mean discrepancy (y) against average utility decrease
/// (x), one marker per lambda point.
void write_tradeoff_svg(const SweepRun& run, std::ostream& out);

/// Per-class selection rate (y) against sweep position (x), one polyline
/// per class plus the target rate as a dashed reference line.
void write_classes_svg(const SweepRun& run, std::ostream& out);

}  // namespace fairtopk
