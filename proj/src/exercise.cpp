/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/exercise.h"

#include "healthwise/error.h"
#include "healthwise/rounding.h"

#include <algorithm>
#include <tuple>

namespace healthwise::exercise {

void validate(const ExerciseSpec& spec)
{
	if (spec.name.empty())
		throw Error(ErrorCode::ValidationError, "exercise needs a name");
	if (!(spec.burn_rate_kcal_per_min >= 1 && spec.burn_rate_kcal_per_min <= 30))
		throw Error(ErrorCode::ValidationError, "burn rate of " + spec.name + " must be between 1 and 30 kCal/min");
}

Chart default_chart()
{
	return {{"walking", 4}, {"cycling", 7}, {"jogging", 10}, {"skipping", 12}};
}

std::vector<ExercisePlanItem> suggest(int excess_kcal, const Chart& chart)
{
	if (chart.empty())
		throw Error(ErrorCode::EmptyChart, "exercise chart is empty");
	if (excess_kcal <= 0)
		return {};

	std::vector<ExercisePlanItem> plan;
	plan.reserve(chart.size());
	for (const auto& spec : chart) {
		validate(spec);
		int minutes = static_cast<int>(ceil_tolerant(excess_kcal / spec.burn_rate_kcal_per_min));
		int burns = static_cast<int>(round_half_up(minutes * spec.burn_rate_kcal_per_min));
		plan.push_back({spec.name, minutes, burns});
	}
	std::sort(plan.begin(), plan.end(), [](const auto& a, const auto& b) {
		return std::tie(a.minutes, a.name) < std::tie(b.minutes, b.name);
	});
	return plan;
}

} // namespace healthwise::exercise
