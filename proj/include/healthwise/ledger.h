/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "healthwise/catalog.h"
#include "healthwise/clock.h"
#include "healthwise/energy.h"
#include "healthwise/exercise.h"
#include "healthwise/jsonl.h"

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace healthwise::ledger {

enum class Meal
{
	breakfast,
	lunch,
	dinner,
};

std::string_view to_string(Meal meal);
Meal parse_meal(std::string_view text); // ValidationError on unknown tokens

struct ConsumptionEntry
{
	std::string entry_id;
	std::string user_id;
	std::string date; // YYYY-MM-DD, local calendar day supplied by the client
	Meal meal = Meal::breakfast;
	std::string gtin13;
	double quantity_g = 0;
	int energy_kcal = 0;
	std::string timestamp; // ISO 8601 UTC

	bool operator==(const ConsumptionEntry&) const = default;
};

nlohmann::json to_json(const ConsumptionEntry& entry);
ConsumptionEntry entry_from_json(const nlohmann::json& j);

enum class Status
{
	green,
	red,
};

std::string_view to_string(Status status);

struct EnergyVerdict
{
	int standard_kcal = 0;
	int required_kcal = 0;
	int consumed_before_kcal = 0;
	int candidate_kcal = 0;
	int balance_kcal = 0;
	Status status = Status::green;
	int excess_kcal = 0;
	energy::MealBudgets meal_budgets;
	std::vector<exercise::ExercisePlanItem> suggestions; // empty when green
};

// The verdict arithmetic on its own: balance = required - consumed - candidate, green iff balance >= 0.
EnergyVerdict make_verdict(const energy::EnergyRequirement& requirement, int consumed_before_kcal, int candidate_kcal,
						   const exercise::Chart& chart);

/**
 * The per-user daily consumption log.
 *
 * Entries are only ever appended. With a backing file every entry is written
 * and flushed before add_consumption returns, and the file is replayed on
 * construction.
 */
class Ledger
{
public:
	Ledger() = default;
	explicit Ledger(std::filesystem::path file);

	int consumed_total(std::string_view user_id, std::string_view date) const;
	std::vector<ConsumptionEntry> entries(std::string_view user_id, std::string_view date) const;
	std::size_t size() const;

	// Never writes; the red verdict does not block a later add.
	EnergyVerdict check_energy(const energy::UserProfile& profile, std::string_view date, int candidate_kcal,
							   Meal meal, const energy::EnergyModel& model, const exercise::Chart& chart) const;

	ConsumptionEntry add_consumption(const energy::UserProfile& profile, std::string_view date,
									 const catalog::ProductRecord& product, double quantity_g, Meal meal,
									 Instant now);

private:
	std::optional<store::JsonLines> _file;
	mutable std::shared_mutex _mutex;
	std::vector<ConsumptionEntry> _entries;
};

} // namespace healthwise::ledger
