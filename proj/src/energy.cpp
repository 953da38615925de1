/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/energy.h"

#include "healthwise/error.h"
#include "healthwise/rounding.h"

#include <algorithm>
#include <cmath>

namespace healthwise::energy {

namespace {

[[noreturn]] void invalid(const std::string& what)
{
	throw Error(ErrorCode::ValidationError, what);
}

bool valid_email(std::string_view email)
{
	auto at = email.find('@');
	return at != std::string_view::npos && email.find('@', at + 1) == std::string_view::npos && at > 0
		   && at + 1 < email.size();
}

} // namespace

std::string_view to_string(Gender gender)
{
	return gender == Gender::male ? "male" : "female";
}

std::string_view to_string(Activity activity)
{
	switch (activity) {
	case Activity::sedentary: return "sedentary";
	case Activity::moderate: return "moderate";
	case Activity::high: return "high";
	}
	return "sedentary";
}

Gender parse_gender(std::string_view text)
{
	if (text == "male")
		return Gender::male;
	if (text == "female")
		return Gender::female;
	invalid("gender must be male or female");
}

Activity parse_activity(std::string_view text)
{
	for (auto a : {Activity::sedentary, Activity::moderate, Activity::high})
		if (to_string(a) == text)
			return a;
	invalid("activity must be sedentary, moderate or high");
}

void validate(const UserProfile& profile)
{
	if (profile.name.empty())
		invalid("name must not be empty");
	if (profile.age < 1 || profile.age > 120)
		invalid("age must be between 1 and 120");
	if (profile.height_cm < 50 || profile.height_cm > 250)
		invalid("height must be between 50 and 250 cm");
	if (!(profile.weight_kg >= 3 && profile.weight_kg <= 300))
		invalid("weight must be between 3 and 300 kg");
	if (!valid_email(profile.email))
		invalid("email must contain exactly one '@' with text on both sides");
}

RequirementTable::RequirementTable(std::vector<RequirementRow> rows) : _rows(std::move(rows))
{
	for (const auto& r : _rows) {
		if (r.age_min < kMinAge || r.age_max > kMaxAge || r.age_min > r.age_max)
			invalid("requirement row has an invalid age band");
		if (r.standard_kcal <= 0)
			invalid("requirement row needs a positive standard energy");
	}
	for (std::size_t i = 0; i < _rows.size(); ++i)
		for (std::size_t j = i + 1; j < _rows.size(); ++j) {
			const auto& a = _rows[i];
			const auto& b = _rows[j];
			if (a.gender == b.gender && a.age_min <= b.age_max && b.age_min <= a.age_max)
				invalid("requirement rows overlap");
		}
}

RequirementTable RequirementTable::defaults()
{
	// The (male, 18-29) band is pinned to 2200 kCal; the other rows are seeded reference values.
	return RequirementTable({
		{Gender::male, 1, 3, 1060},     {Gender::male, 4, 6, 1350},     {Gender::male, 7, 9, 1690},
		{Gender::male, 10, 12, 2190},   {Gender::male, 13, 15, 2450},   {Gender::male, 16, 17, 2640},
		{Gender::male, 18, 29, 2200},   {Gender::male, 30, 59, 2100},   {Gender::male, 60, 120, 1900},
		{Gender::female, 1, 3, 1060},   {Gender::female, 4, 6, 1350},   {Gender::female, 7, 9, 1690},
		{Gender::female, 10, 12, 2010}, {Gender::female, 13, 15, 2060}, {Gender::female, 16, 17, 2060},
		{Gender::female, 18, 29, 1900}, {Gender::female, 30, 59, 1800}, {Gender::female, 60, 120, 1600},
	});
}

std::optional<int> RequirementTable::find(Gender gender, int age) const
{
	for (const auto& r : _rows)
		if (r.gender == gender && age >= r.age_min && age <= r.age_max)
			return r.standard_kcal;
	return std::nullopt;
}

bool RequirementTable::covers_all_ages() const
{
	for (auto g : {Gender::male, Gender::female})
		for (int age = kMinAge; age <= kMaxAge; ++age)
			if (!find(g, age))
				return false;
	return true;
}

void RequirementTable::require_full_coverage() const
{
	if (!covers_all_ages())
		invalid("requirement table must cover ages 1-120 for both genders");
}

double ActivityFactors::factor(Activity activity) const
{
	switch (activity) {
	case Activity::sedentary: return sedentary;
	case Activity::moderate: return moderate;
	case Activity::high: return high;
	}
	return sedentary;
}

void ActivityFactors::validate() const
{
	if (!(1.0 <= sedentary && sedentary <= moderate && moderate <= high && high <= 2.5))
		invalid("activity factors must satisfy 1.0 <= sedentary <= moderate <= high <= 2.5");
}

void MealSplit::validate() const
{
	if (!(breakfast > 0 && lunch > 0 && dinner > 0))
		invalid("meal fractions must be positive");
	if (std::abs(breakfast + lunch + dinner - 1.0) > 1e-9)
		invalid("meal fractions must sum to 1");
}

int standard_energy(const UserProfile& profile, const RequirementTable& table)
{
	auto kcal = table.find(profile.gender, profile.age);
	if (!kcal)
		throw Error(ErrorCode::NoTableRow, "no requirement row for " + std::string(to_string(profile.gender))
											   + ", age " + std::to_string(profile.age));
	return *kcal;
}

EnergyRequirement required_energy(const UserProfile& profile, const RequirementTable& table,
								  const ActivityFactors& factors)
{
	EnergyRequirement r;
	r.standard_kcal = standard_energy(profile, table);
	r.required_kcal = static_cast<int>(round_half_up(r.standard_kcal * factors.factor(profile.activity)));
	return r;
}

MealBudgets meal_budgets(int required_kcal, const MealSplit& split)
{
	split.validate();
	if (required_kcal <= 0)
		invalid("required energy must be positive");

	MealBudgets b;
	b.breakfast = static_cast<int>(round_half_up(required_kcal * split.breakfast));
	b.lunch = static_cast<int>(round_half_up(required_kcal * split.lunch));
	b.dinner = static_cast<int>(round_half_up(required_kcal * split.dinner));
	b.dinner += required_kcal - b.total();
	return b;
}

EnergyRequirement EnergyModel::evaluate(const UserProfile& profile) const
{
	auto r = required_energy(profile, table, factors);
	r.budgets = meal_budgets(r.required_kcal, split);
	return r;
}

} // namespace healthwise::energy
