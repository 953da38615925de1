/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

namespace healthwise {

using Instant = std::chrono::system_clock::time_point;
using Clock = std::function<Instant()>;

inline Instant system_now()
{
	return std::chrono::system_clock::now();
}

// UTC, second precision: 2026-10-17T08:30:00Z
std::string iso_timestamp(Instant instant);

// YYYY-MM-DD naming a real calendar day.
bool is_calendar_date(std::string_view text);

// Today's date in the local time zone as YYYY-MM-DD.
std::string local_date(Instant instant);

} // namespace healthwise
