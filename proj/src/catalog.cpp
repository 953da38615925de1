/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/catalog.h"

#include "healthwise/barcode.h"
#include "healthwise/error.h"
#include "healthwise/rounding.h"

#include <fstream>
#include <mutex>

namespace healthwise::catalog {

namespace {

void check_key(std::string_view gtin13)
{
	try {
		auto gtin = barcode::validate_code(gtin13);
		if (gtin.original().size() == 13 && gtin.digits13() == gtin13)
			return;
	} catch (const Error&) {
	}
	throw Error(ErrorCode::InvalidKey, "'" + std::string(gtin13) + "' is not a canonical 13-digit code");
}

void check_nutrient(double value, const char* field)
{
	if (!(value >= 0))
		throw Error(ErrorCode::InvariantViolation, std::string(field) + " must be a non-negative number");
}

double number_field(const nlohmann::json& j, const char* key, bool required)
{
	auto it = j.find(key);
	if (it == j.end() || it->is_null()) {
		if (required)
			throw Error(ErrorCode::ValidationError, std::string("product field '") + key + "' is missing");
		return 0;
	}
	if (!it->is_number())
		throw Error(ErrorCode::ValidationError, std::string("product field '") + key + "' must be a number");
	return it->get<double>();
}

std::string string_field(const nlohmann::json& j, const char* key, bool required)
{
	auto it = j.find(key);
	if (it == j.end() || it->is_null()) {
		if (required)
			throw Error(ErrorCode::ValidationError, std::string("product field '") + key + "' is missing");
		return {};
	}
	if (!it->is_string())
		throw Error(ErrorCode::ValidationError, std::string("product field '") + key + "' must be a string");
	return it->get<std::string>();
}

} // namespace

void validate(const ProductRecord& record)
{
	check_key(record.gtin13);
	if (record.name.empty())
		throw Error(ErrorCode::InvariantViolation, "product name must not be empty");
	check_nutrient(record.energy_kcal_per_100g, "energy");
	if (record.energy_kcal_per_100g > kMaxEnergyPer100g)
		throw Error(ErrorCode::InvariantViolation, "energy above 900 kCal/100 g is not physical");
	check_nutrient(record.protein_g_per_100g, "protein");
	check_nutrient(record.fat_g_per_100g, "fat");
	check_nutrient(record.carb_g_per_100g, "carbohydrate");
}

nlohmann::json to_json(const ProductRecord& record)
{
	return {
		{"gtin13", record.gtin13},
		{"name", record.name},
		{"energy_kcal_per_100g", record.energy_kcal_per_100g},
		{"protein_g_per_100g", record.protein_g_per_100g},
		{"fat_g_per_100g", record.fat_g_per_100g},
		{"carb_g_per_100g", record.carb_g_per_100g},
		{"serving_note", record.serving_note},
	};
}

ProductRecord from_json(const nlohmann::json& j)
{
	if (!j.is_object())
		throw Error(ErrorCode::ValidationError, "product record must be a JSON object");
	ProductRecord r;
	r.gtin13 = string_field(j, "gtin13", true);
	r.name = string_field(j, "name", true);
	r.energy_kcal_per_100g = number_field(j, "energy_kcal_per_100g", true);
	r.protein_g_per_100g = number_field(j, "protein_g_per_100g", false);
	r.fat_g_per_100g = number_field(j, "fat_g_per_100g", false);
	r.carb_g_per_100g = number_field(j, "carb_g_per_100g", false);
	r.serving_note = string_field(j, "serving_note", false);
	return r;
}

std::vector<ProductRecord> read_products(std::istream& in)
{
	std::vector<ProductRecord> records;
	std::string line;
	int line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		if (line.find_first_not_of(" \t\r") == std::string::npos)
			continue;
		auto j = nlohmann::json::parse(line, nullptr, false);
		if (j.is_discarded())
			throw Error(ErrorCode::ValidationError, "line " + std::to_string(line_no) + " is not valid JSON");
		records.push_back(from_json(j));
	}
	return records;
}

std::vector<ProductRecord> read_products(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw Error(ErrorCode::StorageFailure, "cannot read " + path.string());
	return read_products(in);
}

int energy_for_quantity(const ProductRecord& record, double quantity_g)
{
	if (!(quantity_g > 0))
		throw Error(ErrorCode::NonPositiveQuantity, "quantity must be greater than zero grams");
	return static_cast<int>(round_half_up(record.energy_kcal_per_100g * quantity_g / 100.0));
}

Catalog::Catalog(std::filesystem::path file) : _file(std::in_place, std::move(file))
{
	for (const auto& j : _file->replay()) {
		auto r = from_json(j);
		validate(r);
		_records[r.gtin13] = std::move(r);
	}
}

ProductRecord Catalog::lookup(std::string_view gtin13) const
{
	check_key(gtin13);
	std::shared_lock lock(_mutex);
	auto it = _records.find(std::string(gtin13));
	if (it == _records.end())
		throw Error(ErrorCode::ProductNotFound, "no product with code " + std::string(gtin13));
	return it->second;
}

std::optional<ProductRecord> Catalog::upsert(const ProductRecord& record)
{
	validate(record);
	std::unique_lock lock(_mutex);
	std::optional<ProductRecord> previous;
	if (auto it = _records.find(record.gtin13); it != _records.end())
		previous = it->second;
	_records[record.gtin13] = record;
	try {
		persist_locked();
	} catch (...) {
		if (previous)
			_records[record.gtin13] = *previous;
		else
			_records.erase(record.gtin13);
		throw;
	}
	return previous;
}

void Catalog::upsert_batch(const std::vector<ProductRecord>& records)
{
	for (const auto& r : records)
		validate(r);
	std::unique_lock lock(_mutex);
	auto before = _records;
	for (const auto& r : records)
		_records[r.gtin13] = r;
	try {
		persist_locked();
	} catch (...) {
		_records = std::move(before);
		throw;
	}
}

std::vector<ProductRecord> Catalog::all() const
{
	std::shared_lock lock(_mutex);
	std::vector<ProductRecord> out;
	out.reserve(_records.size());
	for (const auto& [key, r] : _records)
		out.push_back(r);
	return out;
}

std::size_t Catalog::size() const
{
	std::shared_lock lock(_mutex);
	return _records.size();
}

void Catalog::persist_locked() const
{
	if (!_file)
		return;
	std::vector<nlohmann::json> lines;
	lines.reserve(_records.size());
	for (const auto& [key, r] : _records)
		lines.push_back(to_json(r));
	_file->rewrite(lines);
}

} // namespace healthwise::catalog
