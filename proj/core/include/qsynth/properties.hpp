#pragma once

#include "qsynth/anf.hpp"

namespace qsynth {

/// max over a != 0, b of #{x : S(x) ^ S(x ^ a) = b}.
int differential_uniformity(const Lut& lut);

/// max over nonzero output masks a and all input masks b of
/// |sum_x (-1)^(a.S(x) ^ b.x)|.
int linearity(const Lut& lut);

bool is_bijective(const Lut& lut);

}  // namespace qsynth
