/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace healthwise::exercise {

struct ExerciseSpec
{
	std::string name;
	double burn_rate_kcal_per_min = 0;
};

struct ExercisePlanItem
{
	std::string name;
	int minutes = 0;
	int burns_kcal = 0;

	bool operator==(const ExercisePlanItem&) const = default;
};

using Chart = std::vector<ExerciseSpec>;

// Burn rate must lie in [1, 30] kCal/min and the name must be non-empty.
void validate(const ExerciseSpec& spec);

Chart default_chart();

// One alternative per chart entry, each sufficient on its own, quickest first (ties by name).
std::vector<ExercisePlanItem> suggest(int excess_kcal, const Chart& chart);

} // namespace healthwise::exercise
