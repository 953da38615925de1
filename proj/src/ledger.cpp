/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/ledger.h"

#include "healthwise/error.h"

#include <mutex>

namespace healthwise::ledger {

namespace {

void require_date(std::string_view date)
{
	if (!is_calendar_date(date))
		throw Error(ErrorCode::ValidationError, "date must be a calendar day written YYYY-MM-DD");
}

int sum_locked(const std::vector<ConsumptionEntry>& entries, std::string_view user_id, std::string_view date)
{
	int total = 0;
	for (const auto& e : entries)
		if (e.user_id == user_id && e.date == date)
			total += e.energy_kcal;
	return total;
}

} // namespace

std::string_view to_string(Meal meal)
{
	switch (meal) {
	case Meal::breakfast: return "breakfast";
	case Meal::lunch: return "lunch";
	case Meal::dinner: return "dinner";
	}
	return "breakfast";
}

Meal parse_meal(std::string_view text)
{
	for (auto m : {Meal::breakfast, Meal::lunch, Meal::dinner})
		if (to_string(m) == text)
			return m;
	throw Error(ErrorCode::ValidationError, "meal must be breakfast, lunch or dinner");
}

std::string_view to_string(Status status)
{
	return status == Status::green ? "green" : "red";
}

nlohmann::json to_json(const ConsumptionEntry& e)
{
	return {
		{"entry_id", e.entry_id},     {"user_id", e.user_id},       {"date", e.date},
		{"meal", to_string(e.meal)},  {"gtin13", e.gtin13},         {"quantity_g", e.quantity_g},
		{"energy_kcal", e.energy_kcal}, {"timestamp", e.timestamp},
	};
}

ConsumptionEntry entry_from_json(const nlohmann::json& j)
{
	try {
		ConsumptionEntry e;
		e.entry_id = j.at("entry_id").get<std::string>();
		e.user_id = j.at("user_id").get<std::string>();
		e.date = j.at("date").get<std::string>();
		e.meal = parse_meal(j.at("meal").get<std::string>());
		e.gtin13 = j.at("gtin13").get<std::string>();
		e.quantity_g = j.at("quantity_g").get<double>();
		e.energy_kcal = j.at("energy_kcal").get<int>();
		e.timestamp = j.at("timestamp").get<std::string>();
		return e;
	} catch (const nlohmann::json::exception& ex) {
		throw Error(ErrorCode::StorageFailure, std::string("bad log record: ") + ex.what());
	}
}

EnergyVerdict make_verdict(const energy::EnergyRequirement& requirement, int consumed_before_kcal, int candidate_kcal,
						   const exercise::Chart& chart)
{
	if (candidate_kcal < 0)
		throw Error(ErrorCode::ValidationError, "candidate energy must not be negative");

	EnergyVerdict v;
	v.standard_kcal = requirement.standard_kcal;
	v.required_kcal = requirement.required_kcal;
	v.meal_budgets = requirement.budgets;
	v.consumed_before_kcal = consumed_before_kcal;
	v.candidate_kcal = candidate_kcal;
	v.balance_kcal = requirement.required_kcal - consumed_before_kcal - candidate_kcal;
	v.status = v.balance_kcal >= 0 ? Status::green : Status::red;
	v.excess_kcal = v.balance_kcal < 0 ? -v.balance_kcal : 0;
	if (v.status == Status::red)
		v.suggestions = exercise::suggest(v.excess_kcal, chart);
	return v;
}

Ledger::Ledger(std::filesystem::path file) : _file(std::in_place, std::move(file))
{
	for (const auto& j : _file->replay())
		_entries.push_back(entry_from_json(j));
}

int Ledger::consumed_total(std::string_view user_id, std::string_view date) const
{
	std::shared_lock lock(_mutex);
	return sum_locked(_entries, user_id, date);
}

std::vector<ConsumptionEntry> Ledger::entries(std::string_view user_id, std::string_view date) const
{
	std::shared_lock lock(_mutex);
	std::vector<ConsumptionEntry> out;
	for (const auto& e : _entries)
		if (e.user_id == user_id && e.date == date)
			out.push_back(e);
	return out;
}

std::size_t Ledger::size() const
{
	std::shared_lock lock(_mutex);
	return _entries.size();
}

EnergyVerdict Ledger::check_energy(const energy::UserProfile& profile, std::string_view date, int candidate_kcal,
								   Meal, const energy::EnergyModel& model, const exercise::Chart& chart) const
{
	require_date(date);
	auto requirement = model.evaluate(profile);
	return make_verdict(requirement, consumed_total(profile.id, date), candidate_kcal, chart);
}

ConsumptionEntry Ledger::add_consumption(const energy::UserProfile& profile, std::string_view date,
										 const catalog::ProductRecord& product, double quantity_g, Meal meal,
										 Instant now)
{
	require_date(date);
	ConsumptionEntry e;
	e.user_id = profile.id;
	e.date = std::string(date);
	e.meal = meal;
	e.gtin13 = product.gtin13;
	e.quantity_g = quantity_g;
	e.energy_kcal = catalog::energy_for_quantity(product, quantity_g);
	e.timestamp = iso_timestamp(now);

	std::unique_lock lock(_mutex);
	e.entry_id = "e" + std::to_string(_entries.size() + 1);
	if (_file)
		_file->append(to_json(e));
	_entries.push_back(e);
	return e;
}

} // namespace healthwise::ledger
