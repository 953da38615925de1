/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace healthwise {

// Whole-kCal rounding used everywhere: halves go up. The small slack absorbs
// binary representation error so that e.g. 0.35 * 2750 rounds like 962.5.
inline long round_half_up(double value)
{
	return static_cast<long>(std::floor(value + 0.5 + 1e-9));
}

// Smallest integer >= value, tolerant of representation error just above an integer.
inline long ceil_tolerant(double value)
{
	return static_cast<long>(std::ceil(value - 1e-9));
}

} // namespace healthwise
