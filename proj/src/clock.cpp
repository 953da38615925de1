/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/clock.h"

#include <charconv>
#include <ctime>

namespace healthwise {

namespace {

std::string format_tm(const std::tm& tm, const char* pattern)
{
	char buf[32];
	auto n = std::strftime(buf, sizeof buf, pattern, &tm);
	return {buf, n};
}

} // namespace

std::string iso_timestamp(Instant instant)
{
	auto t = std::chrono::system_clock::to_time_t(instant);
	std::tm tm{};
	gmtime_r(&t, &tm);
	return format_tm(tm, "%Y-%m-%dT%H:%M:%SZ");
}

std::string local_date(Instant instant)
{
	auto t = std::chrono::system_clock::to_time_t(instant);
	std::tm tm{};
	localtime_r(&t, &tm);
	return format_tm(tm, "%Y-%m-%d");
}

bool is_calendar_date(std::string_view text)
{
	if (text.size() != 10 || text[4] != '-' || text[7] != '-')
		return false;
	for (std::size_t i = 0; i < text.size(); ++i)
		if (i != 4 && i != 7 && (text[i] < '0' || text[i] > '9'))
			return false;
	int y = 0;
	unsigned m = 0;
	unsigned d = 0;
	auto parse = [&](std::size_t pos, std::size_t len, auto& out) {
		auto first = text.data() + pos;
		auto [ptr, ec] = std::from_chars(first, first + len, out);
		return ec == std::errc() && ptr == first + len;
	};
	if (!parse(0, 4, y) || !parse(5, 2, m) || !parse(8, 2, d))
		return false;
	using namespace std::chrono;
	return year_month_day{year{y}, month{m}, day{d}}.ok();
}

} // namespace healthwise
