/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "healthwise/jsonl.h"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace healthwise::catalog {

inline constexpr double kMaxEnergyPer100g = 900; // pure fat

struct ProductRecord
{
	std::string gtin13;
	std::string name;
	double energy_kcal_per_100g = 0;
	double protein_g_per_100g = 0;
	double fat_g_per_100g = 0;
	double carb_g_per_100g = 0;
	std::string serving_note;

	bool operator==(const ProductRecord&) const = default;
};

// InvalidKey when gtin13 is not a canonical, check-valid 13-digit code; InvariantViolation otherwise.
void validate(const ProductRecord& record);

nlohmann::json to_json(const ProductRecord& record);
ProductRecord from_json(const nlohmann::json& j); // ValidationError on missing or mistyped fields

// Reads a JSON-lines product file (the catalog store and import format).
std::vector<ProductRecord> read_products(std::istream& in);
std::vector<ProductRecord> read_products(const std::filesystem::path& path);

// round-half-up(energy per 100 g * quantity / 100)
int energy_for_quantity(const ProductRecord& record, double quantity_g);

/**
 * Product database keyed by canonical GTIN-13.
 *
 * With a backing file, the whole record set is rewritten atomically on every
 * mutation and reloaded on construction. Mutations are serialized; readers see
 * the last committed snapshot.
 */
class Catalog
{
public:
	Catalog() = default;
	explicit Catalog(std::filesystem::path file);

	ProductRecord lookup(std::string_view gtin13) const;

	// Returns the record it replaced, if any.
	std::optional<ProductRecord> upsert(const ProductRecord& record);
	void upsert_batch(const std::vector<ProductRecord>& records);

	std::vector<ProductRecord> all() const;
	std::size_t size() const;

private:
	void persist_locked() const;

	std::optional<store::JsonLines> _file;
	mutable std::shared_mutex _mutex;
	std::map<std::string, ProductRecord> _records;
};

} // namespace healthwise::catalog
