/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "../support/oracle.h"
#include "../support/temp_dir.h"

#include "healthwise/catalog.h"
#include "healthwise/error.h"
#include "healthwise/jsonl.h"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

using namespace healthwise;
using namespace healthwise::catalog;
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

std::string slurp(const std::filesystem::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& text)
{
	std::ofstream out(p, std::ios::binary | std::ios::trunc);
	out << text;
}

ProductRecord biscuits()
{
	return {"4006381333931", "Cream biscuits", 500, 6.5, 24, 65, "4 biscuits = 50 g"};
}

} // namespace

TEST_CASE("json lines append and replay")
{
	TempDir dir;
	store::JsonLines file(dir / "x.jsonl");
	CHECK(file.replay().empty());
	file.append({{"a", 1}});
	file.append({{"b", "two"}});
	auto r = file.replay();
	REQUIRE(r.size() == 2);
	CHECK(r[0]["a"] == 1);
	CHECK(r[1]["b"] == "two");
	CHECK(slurp(file.path()) == "{\"a\":1}\n{\"b\":\"two\"}\n");

	file.rewrite({{{"c", 3}}});
	CHECK(slurp(file.path()) == "{\"c\":3}\n");
	CHECK_FALSE(std::filesystem::exists(dir / "x.jsonl.tmp"));
}

TEST_CASE("json lines torn tail is cut, corrupt middle is fatal")
{
	TempDir dir;
	auto p = dir / "log.jsonl";

	spit(p, "{\"a\":1}\n{\"a\":2}\n{\"a\":");
	store::JsonLines file(p);
	CHECK(file.replay().size() == 2);
	CHECK(slurp(p) == "{\"a\":1}\n{\"a\":2}\n");
	file.append({{"a", 3}});
	CHECK(file.replay().size() == 3);

	// Parses, but was never terminated: still a torn write.
	spit(p, "{\"a\":1}\n{\"a\":2}");
	CHECK(file.replay().size() == 1);
	CHECK(slurp(p) == "{\"a\":1}\n");

	spit(p, "{\"a\":1}\ngarbage\n");
	CHECK(file.replay().size() == 1);

	spit(p, "{\"a\":1}\ngarbage\n{\"a\":3}\n");
	CHECK(code_of([&] { file.replay(); }) == ErrorCode::StorageFailure);

	spit(p, "\n\n{\"a\":1}\n\n");
	CHECK(file.replay().size() == 1);
}

TEST_CASE("json lines write failures")
{
	TempDir dir;
	std::filesystem::create_directory(dir / "sub");
	store::JsonLines blocked(dir / "sub");
	CHECK(code_of([&] { blocked.append({{"a", 1}}); }) == ErrorCode::StorageFailure);
	store::JsonLines missing(dir / "nope" / "x.jsonl");
	CHECK(code_of([&] { missing.append({{"a", 1}}); }) == ErrorCode::StorageFailure);
	CHECK(code_of([&] { missing.rewrite({}); }) == ErrorCode::StorageFailure);
}

TEST_CASE("product record validation")
{
	CHECK_NOTHROW(validate(biscuits()));
	auto r = biscuits();
	r.gtin13 = "4006381333932";
	CHECK(code_of([&] { validate(r); }) == ErrorCode::InvalidKey);
	r.gtin13 = "55000963";
	CHECK(code_of([&] { validate(r); }) == ErrorCode::InvalidKey);
	r = biscuits();
	r.energy_kcal_per_100g = 950;
	CHECK(code_of([&] { validate(r); }) == ErrorCode::InvariantViolation);
	r.energy_kcal_per_100g = 900;
	CHECK_NOTHROW(validate(r));
	r.fat_g_per_100g = -1;
	CHECK(code_of([&] { validate(r); }) == ErrorCode::InvariantViolation);
	r = biscuits();
	r.name = "";
	CHECK(code_of([&] { validate(r); }) == ErrorCode::InvariantViolation);
}

TEST_CASE("product json")
{
	auto r = biscuits();
	CHECK(from_json(to_json(r)) == r);
	auto minimal = from_json(nlohmann::json{{"gtin13", "4006381333931"}, {"name", "x"}, {"energy_kcal_per_100g", 1}});
	CHECK(minimal.protein_g_per_100g == 0);
	CHECK(minimal.serving_note.empty());
	CHECK(code_of([] { from_json(nlohmann::json{{"name", "x"}}); }) == ErrorCode::ValidationError);
	CHECK(code_of([] { from_json(nlohmann::json{{"gtin13", "4006381333931"}, {"name", "x"}, {"energy_kcal_per_100g", "lots"}}); }) ==
		  ErrorCode::ValidationError);
	CHECK(code_of([] { from_json(nlohmann::json::array()); }) == ErrorCode::ValidationError);

	std::istringstream in(to_json(r).dump() + "\n\n" + to_json(r).dump() + "\n");
	CHECK(read_products(in).size() == 2);
	std::istringstream bad("{\n");
	CHECK(code_of([&] { read_products(bad); }) == ErrorCode::ValidationError);
}

TEST_CASE("energy for quantity")
{
	auto r = biscuits();
	CHECK(energy_for_quantity(r, 300) == 1500);
	CHECK(energy_for_quantity(r, 100) == 500);
	r.energy_kcal_per_100g = 333;
	CHECK(energy_for_quantity(r, 50) == 167);
	CHECK(energy_for_quantity(r, 100) == 333);
	CHECK(code_of([&] { energy_for_quantity(r, 0); }) == ErrorCode::NonPositiveQuantity);
	CHECK(code_of([&] { energy_for_quantity(r, -5); }) == ErrorCode::NonPositiveQuantity);

	std::mt19937 rng(47);
	std::uniform_int_distribution<int> density(0, 900);
	std::uniform_int_distribution<int> grams(1, 2000);
	for (int i = 0; i < 10000; ++i) {
		r.energy_kcal_per_100g = density(rng);
		int q1 = grams(rng), q2 = grams(rng);
		// Integer density and grams: exact half-up oracle.
		REQUIRE(energy_for_quantity(r, q1) == oracle::div_round(static_cast<long>(r.energy_kcal_per_100g) * q1, 100));
		REQUIRE(std::abs(energy_for_quantity(r, q1 + q2) - energy_for_quantity(r, q1) - energy_for_quantity(r, q2)) <= 1);
	}
}

TEST_CASE("catalog lookup and upsert in memory")
{
	Catalog c;
	CHECK(c.size() == 0);
	CHECK(code_of([&] { c.lookup("4006381333931"); }) == ErrorCode::ProductNotFound);
	CHECK(code_of([&] { c.lookup("4006381333932"); }) == ErrorCode::InvalidKey);
	CHECK(code_of([&] { c.lookup("55000963"); }) == ErrorCode::InvalidKey);

	CHECK_FALSE(c.upsert(biscuits()).has_value());
	CHECK(c.lookup("4006381333931") == biscuits());
	auto renamed = biscuits();
	renamed.name = "Butter biscuits";
	auto prev = c.upsert(renamed);
	REQUIRE(prev.has_value());
	CHECK(prev->name == "Cream biscuits");
	CHECK(c.lookup("4006381333931").name == "Butter biscuits");

	auto heavy = biscuits();
	heavy.energy_kcal_per_100g = 950;
	CHECK(code_of([&] { c.upsert(heavy); }) == ErrorCode::InvariantViolation);
	CHECK(c.lookup("4006381333931").name == "Butter biscuits");
}

TEST_CASE("catalog persistence round trip")
{
	TempDir dir;
	auto seed = read_products(std::filesystem::path(HW_SEED_CATALOG));
	CHECK(seed.size() >= 10);
	for (const auto& r : seed) {
		CHECK_NOTHROW(validate(r));
		CHECK(oracle::check_valid(r.gtin13));
	}
	{
		Catalog c(dir / "catalog.jsonl");
		c.upsert_batch(seed);
		CHECK(c.size() == seed.size());
	}
	Catalog reloaded(dir / "catalog.jsonl");
	auto a = reloaded.all();
	auto b = seed;
	auto by_key = [](const ProductRecord& x, const ProductRecord& y) { return x.gtin13 < y.gtin13; };
	std::sort(a.begin(), a.end(), by_key);
	std::sort(b.begin(), b.end(), by_key);
	CHECK(a == b);
	CHECK(reloaded.lookup("4006381333931").energy_kcal_per_100g == 500);
}

TEST_CASE("catalog keeps memory and file in step when a write fails")
{
	TempDir dir;
	auto path = dir / "catalog.jsonl";
	Catalog c(path);
	c.upsert(biscuits());
	// Block the rename target's temp file by making it a directory.
	std::filesystem::create_directory(dir / "catalog.jsonl.tmp");
	auto other = biscuits();
	other.gtin13 = "5901234123457";
	CHECK(code_of([&] { c.upsert(other); }) == ErrorCode::StorageFailure);
	CHECK(code_of([&] { c.lookup("5901234123457"); }) == ErrorCode::ProductNotFound);
	CHECK(code_of([&] { c.upsert_batch({other}); }) == ErrorCode::StorageFailure);
	CHECK(c.size() == 1);
}
