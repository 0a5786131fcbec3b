#pragma once

#include "pressure_lab/linalg.hpp"

namespace pressure_lab {

struct FiberSup {
  double angle = 0.0;
  double log_stretch = 0.0;
};

/// sup over lines E (angle in [0, pi)) of log|M E|: coarse angle grid, then
/// golden-section refinement around the best cell.
FiberSup line_fiber_sup(const Mat& m, int angle_grid, int refine_steps);

}  // namespace pressure_lab
