#pragma once

#include <span>

#include "lpb/field.hpp"

namespace lpb::detail {

/// In-place unnormalised n-dimensional DFT of one component block.
/// sign = -1 applies e^{-i k.x} (forward), +1 applies e^{+i k.x} (inverse).
/// `data` must come from AlignedAllocator storage.
void fft_inplace(const GridSpec& grid, std::span<cplx> data, int sign);

}  // namespace lpb::detail
