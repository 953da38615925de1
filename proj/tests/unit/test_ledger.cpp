/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "../support/temp_dir.h"

#include "healthwise/clock.h"
#include "healthwise/error.h"
#include "healthwise/ledger.h"

#include <doctest.h>

#include <random>
#include <set>
#include <thread>

using namespace healthwise;
using namespace healthwise::ledger;
using testing_support::TempDir;

namespace {

ErrorCode code_of(auto&& fn)
{
	try {
		fn();
	} catch (const Error& e) {
		return e.code();
	}
	FAIL("expected an Error");
	return ErrorCode::InternalError;
}

energy::UserProfile reference_profile(std::string id = "u1")
{
	return {std::move(id), "Asha Rao", energy::Gender::male, 20, 170, 60, energy::Activity::high, "asha@example.com"};
}

catalog::ProductRecord biscuits()
{
	return {"4006381333931", "Cream biscuits", 500, 6.5, 24, 65, ""};
}

Instant at(int h, int m)
{
	using namespace std::chrono;
	return sys_days{year{2026} / 10 / 17} + hours{h} + minutes{m};
}

const energy::EnergyModel model;
const exercise::Chart chart = exercise::default_chart();

} // namespace

TEST_CASE("clock helpers")
{
	CHECK(iso_timestamp(at(8, 30)) == "2026-10-17T08:30:00Z");
	CHECK(is_calendar_date("2026-10-17"));
	CHECK(is_calendar_date("2024-02-29"));
	CHECK_FALSE(is_calendar_date("2026-02-29"));
	CHECK_FALSE(is_calendar_date("2026-13-01"));
	CHECK_FALSE(is_calendar_date("2026-1-01"));
	CHECK_FALSE(is_calendar_date("+026-10-17"));
	CHECK_FALSE(is_calendar_date("2026/10/17"));
	CHECK_FALSE(is_calendar_date(""));
	CHECK(is_calendar_date(local_date(system_now())));
}

TEST_CASE("meals")
{
	CHECK(parse_meal("breakfast") == Meal::breakfast);
	CHECK(parse_meal("lunch") == Meal::lunch);
	CHECK(parse_meal("dinner") == Meal::dinner);
	CHECK(to_string(Meal::dinner) == "dinner");
	CHECK(code_of([] { parse_meal("snack"); }) == ErrorCode::ValidationError);
	CHECK(code_of([] { parse_meal("Lunch"); }) == ErrorCode::ValidationError);
}

TEST_CASE("verdict arithmetic")
{
	energy::EnergyRequirement req{2200, 2750, {688, 1100, 962}};
	auto g = make_verdict(req, 0, 2750, chart);
	CHECK(g.balance_kcal == 0);
	CHECK(g.status == Status::green);
	CHECK(g.excess_kcal == 0);
	CHECK(g.suggestions.empty());

	auto r = make_verdict(req, 0, 2751, chart);
	CHECK(r.balance_kcal == -1);
	CHECK(r.status == Status::red);
	CHECK(r.excess_kcal == 1);
	CHECK_FALSE(r.suggestions.empty());

	CHECK(code_of([&] { make_verdict(req, 0, -1, chart); }) == ErrorCode::ValidationError);

	std::mt19937 rng(53);
	std::uniform_int_distribution<int> kcal(0, 6000);
	for (int i = 0; i < 10000; ++i) {
		int required = kcal(rng) + 1, consumed = kcal(rng), candidate = kcal(rng);
		auto v = make_verdict({required, required, {}}, consumed, candidate, chart);
		REQUIRE(v.balance_kcal + v.consumed_before_kcal + v.candidate_kcal == v.required_kcal);
		REQUIRE((v.status == Status::green) == (v.balance_kcal >= 0));
		REQUIRE(v.excess_kcal == std::max(0, -v.balance_kcal));
		REQUIRE(v.suggestions.empty() == (v.status == Status::green));
	}
}

TEST_CASE("reference day: check and add in sequence")
{
	Ledger log;
	auto p = reference_profile();
	const std::string day = "2026-10-17";
	auto product = biscuits();

	CHECK(log.consumed_total("u1", day) == 0);

	auto v1 = log.check_energy(p, day, 1500, Meal::breakfast, model, chart);
	CHECK(v1.standard_kcal == 2200);
	CHECK(v1.required_kcal == 2750);
	CHECK(v1.balance_kcal == 1250);
	CHECK(v1.status == Status::green);
	CHECK(log.size() == 0); // checking never writes
	auto e1 = log.add_consumption(p, day, product, 300, Meal::breakfast, at(8, 0));
	CHECK(e1.energy_kcal == 1500);
	CHECK(e1.entry_id == "e1");
	CHECK(e1.timestamp == "2026-10-17T08:00:00Z");

	auto v2 = log.check_energy(p, day, 1000, Meal::lunch, model, chart);
	CHECK(v2.consumed_before_kcal == 1500);
	CHECK(v2.balance_kcal == 250);
	CHECK(v2.status == Status::green);
	log.add_consumption(p, day, product, 200, Meal::lunch, at(13, 0));
	CHECK(log.consumed_total("u1", day) == 2500);

	auto v3 = log.check_energy(p, day, 500, Meal::dinner, model, chart);
	CHECK(v3.balance_kcal == -250);
	CHECK(v3.status == Status::red);
	CHECK(v3.excess_kcal == 250);
	REQUIRE_FALSE(v3.suggestions.empty());
	CHECK(v3.suggestions.front().burns_kcal >= 250);
	CHECK(v3.meal_budgets == energy::MealBudgets{688, 1100, 962});
}

TEST_CASE("totals are per user and per day")
{
	Ledger log;
	auto product = biscuits();
	log.add_consumption(reference_profile("u1"), "2026-10-17", product, 100, Meal::lunch, at(9, 0));
	log.add_consumption(reference_profile("u1"), "2026-10-18", product, 100, Meal::lunch, at(9, 0));
	log.add_consumption(reference_profile("u2"), "2026-10-17", product, 100, Meal::lunch, at(9, 0));
	log.add_consumption(reference_profile("u1"), "2026-10-17", product, 100, Meal::lunch, at(9, 5));
	CHECK(log.consumed_total("u1", "2026-10-17") == 1000);
	CHECK(log.consumed_total("u1", "2026-10-18") == 500);
	CHECK(log.consumed_total("u2", "2026-10-17") == 500);
	CHECK(log.consumed_total("u3", "2026-10-17") == 0);
	CHECK(log.entries("u1", "2026-10-17").size() == 2);

	CHECK(code_of([&] { log.add_consumption(reference_profile(), "2026-10-17", product, 0, Meal::lunch, at(9, 0)); }) ==
		  ErrorCode::NonPositiveQuantity);
	CHECK(code_of([&] { log.add_consumption(reference_profile(), "17/10/2026", product, 1, Meal::lunch, at(9, 0)); }) ==
		  ErrorCode::ValidationError);
	CHECK(code_of([&] { log.check_energy(reference_profile(), "2026-02-30", 1, Meal::lunch, model, chart); }) ==
		  ErrorCode::ValidationError);
	CHECK(log.size() == 4);
}

TEST_CASE("log survives a restart and keeps appending")
{
	TempDir dir;
	auto path = dir / "log.jsonl";
	std::vector<ConsumptionEntry> written;
	{
		Ledger log(path);
		written.push_back(log.add_consumption(reference_profile(), "2026-10-17", biscuits(), 300, Meal::breakfast, at(8, 0)));
		written.push_back(log.add_consumption(reference_profile(), "2026-10-17", biscuits(), 12.5, Meal::dinner, at(19, 0)));
	}
	Ledger again(path);
	CHECK(again.entries("u1", "2026-10-17") == written);
	auto next = again.add_consumption(reference_profile(), "2026-10-17", biscuits(), 1, Meal::dinner, at(20, 0));
	CHECK(next.entry_id == "e3");
	CHECK(entry_from_json(to_json(next)) == next);
	CHECK(code_of([] { entry_from_json(nlohmann::json{{"entry_id", 1}}); }) == ErrorCode::StorageFailure);
}

TEST_CASE("concurrent adds and checks see whole entries")
{
	Ledger log;
	auto product = biscuits();
	std::vector<std::thread> threads;
	for (int t = 0; t < 4; ++t)
		threads.emplace_back([&, t] {
			for (int i = 0; i < 100; ++i) {
				log.add_consumption(reference_profile(), "2026-10-17", product, 10, Meal::lunch, at(t, i % 60));
				auto total = log.consumed_total("u1", "2026-10-17");
				CHECK(total % 50 == 0);
			}
		});
	for (auto& th : threads)
		th.join();
	CHECK(log.consumed_total("u1", "2026-10-17") == 400 * 50);
	std::set<std::string> ids;
	for (const auto& e : log.entries("u1", "2026-10-17"))
		ids.insert(e.entry_id);
	CHECK(ids.size() == 400);
}
