/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/wire.h"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

namespace healthwise::wire {

namespace {

constexpr std::array<std::string_view, 15> INTEGER_FIELDS = {
	"standardKcal", "requiredKcal", "consumedKcal", "candidateKcal", "balanceKcal",
	"excessKcal",   "minutes",      "burnsKcal",    "energyKcal",    "age",
	"heightCm",     "breakfastKcal", "lunchKcal",   "dinnerKcal",    "totalKcal",
};

constexpr std::array<std::string_view, 6> NUMBER_FIELDS = {
	"energyPer100g", "proteinPer100g", "fatPer100g", "carbPer100g", "weightKg", "quantityG",
};

constexpr std::array<std::pair<std::string_view, std::string_view>, 3> LISTS = {{
	{"suggestions", "suggestion"},
	{"profiles", "profile"},
	{"entries", "entry"},
}};

template <typename T>
bool parse_exact(std::string_view text, T& out)
{
	auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
	return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

nlohmann::json leaf(const Node& node)
{
	switch (value_kind(node.name)) {
	case ValueKind::Integer:
		if (long long v; parse_exact(node.text, v))
			return v;
		break;
	case ValueKind::Number:
		if (double v; parse_exact(node.text, v) && std::isfinite(v))
			return v;
		break;
	case ValueKind::Text: break;
	}
	return node.text;
}

std::string leaf_text(const nlohmann::json& value)
{
	if (value.is_string())
		return value.get<std::string>();
	if (value.is_number_integer())
		return std::to_string(value.get<long long>());
	if (value.is_number_unsigned())
		return std::to_string(value.get<unsigned long long>());
	if (value.is_number_float())
		return format_number(value.get<double>());
	if (value.is_boolean())
		return value.get<bool>() ? "true" : "false";
	throw Error(ErrorCode::ValidationError, "field values must be strings, numbers or booleans");
}

} // namespace

ValueKind value_kind(std::string_view field)
{
	for (auto f : INTEGER_FIELDS)
		if (f == field)
			return ValueKind::Integer;
	for (auto f : NUMBER_FIELDS)
		if (f == field)
			return ValueKind::Number;
	return ValueKind::Text;
}

std::optional<std::string_view> list_item_name(std::string_view container)
{
	for (const auto& [list, item] : LISTS)
		if (list == container)
			return item;
	return std::nullopt;
}

std::string format_number(double value)
{
	char buf[64];
	auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
	if (ec != std::errc())
		return "0";
	return {buf, ptr};
}

nlohmann::json to_json(const Node& response)
{
	auto object = nlohmann::json::object();
	for (const auto& c : response.children) {
		if (list_item_name(c.name)) {
			auto array = nlohmann::json::array();
			for (const auto& item : c.children)
				array.push_back(to_json(item));
			object[c.name] = std::move(array);
		} else if (!c.children.empty()) {
			object[c.name] = to_json(c);
		} else {
			object[c.name] = leaf(c);
		}
	}
	return object;
}

Node from_json(std::string name, const nlohmann::json& object)
{
	Node node(std::move(name));
	if (!object.is_object())
		throw Error(ErrorCode::ValidationError, "expected a JSON object for " + node.name);
	for (const auto& [key, value] : object.items()) {
		if (auto item = list_item_name(key)) {
			Node list(key);
			if (!value.is_array())
				throw Error(ErrorCode::ValidationError, key + " must be an array");
			for (const auto& element : value)
				list.children.push_back(from_json(std::string(*item), element));
			node.children.push_back(std::move(list));
		} else if (value.is_object()) {
			node.children.push_back(from_json(key, value));
		} else {
			node.children.emplace_back(key, leaf_text(value));
		}
	}
	return node;
}

Fields fields_from_json(const nlohmann::json& object)
{
	if (!object.is_object())
		throw Error(ErrorCode::ValidationError, "request body must be a JSON object");
	Fields fields;
	for (const auto& [key, value] : object.items()) {
		if (value.is_null())
			continue;
		fields.emplace(key, leaf_text(value));
	}
	return fields;
}

nlohmann::json fault_json(const Fault& fault)
{
	return {{"error", {{"code", to_string(fault.code)}, {"message", fault.message}}}};
}

} // namespace healthwise::wire
