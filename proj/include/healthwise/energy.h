/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace healthwise::energy {

enum class Gender
{
	male,
	female,
};

enum class Activity
{
	sedentary,
	moderate,
	high,
};

std::string_view to_string(Gender gender);
std::string_view to_string(Activity activity);
Gender parse_gender(std::string_view text);     // ValidationError on unknown tokens
Activity parse_activity(std::string_view text); // ValidationError on unknown tokens

struct UserProfile
{
	std::string id;
	std::string name;
	Gender gender = Gender::male;
	int age = 0;
	int height_cm = 0;
	double weight_kg = 0;
	Activity activity = Activity::sedentary;
	std::string email;

	bool operator==(const UserProfile&) const = default;
};

// Throws ValidationError naming the first offending field.
void validate(const UserProfile& profile);

struct RequirementRow
{
	Gender gender;
	int age_min;
	int age_max;
	int standard_kcal;

	bool operator==(const RequirementRow&) const = default;
};

/**
 * Standard daily energy by gender and age band.
 *
 * Rows must be well-formed and must not overlap. Gaps are allowed here and
 * surface as NoTableRow on lookup; a table used to run the server must also
 * pass require_full_coverage().
 */
class RequirementTable
{
public:
	static constexpr int kMinAge = 1;
	static constexpr int kMaxAge = 120;

	explicit RequirementTable(std::vector<RequirementRow> rows);

	static RequirementTable defaults();

	const std::vector<RequirementRow>& rows() const noexcept { return _rows; }
	std::optional<int> find(Gender gender, int age) const;
	bool covers_all_ages() const;
	void require_full_coverage() const;

private:
	std::vector<RequirementRow> _rows;
};

struct ActivityFactors
{
	double sedentary = 1.00;
	double moderate = 1.12;
	double high = 1.25;

	double factor(Activity activity) const;
	void validate() const;
};

struct MealSplit
{
	double breakfast = 0.25;
	double lunch = 0.40;
	double dinner = 0.35;

	void validate() const;
};

struct MealBudgets
{
	int breakfast = 0;
	int lunch = 0;
	int dinner = 0;

	int total() const { return breakfast + lunch + dinner; }
	bool operator==(const MealBudgets&) const = default;
};

struct EnergyRequirement
{
	int standard_kcal = 0;
	int required_kcal = 0;
	MealBudgets budgets;
};

int standard_energy(const UserProfile& profile, const RequirementTable& table);

// Fills standard and required energy; budgets are left zero.
EnergyRequirement required_energy(const UserProfile& profile, const RequirementTable& table,
								  const ActivityFactors& factors);

// Rounds each share half-up, then moves any residue onto dinner so the triple sums to required_kcal.
MealBudgets meal_budgets(int required_kcal, const MealSplit& split);

struct EnergyModel
{
	RequirementTable table = RequirementTable::defaults();
	ActivityFactors factors;
	MealSplit split;

	EnergyRequirement evaluate(const UserProfile& profile) const;
};

} // namespace healthwise::energy
