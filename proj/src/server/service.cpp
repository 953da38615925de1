/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/server/service.h"

#include "healthwise/barcode.h"
#include "healthwise/error.h"

#include <spdlog/spdlog.h>

#include <charconv>
#include <cmath>

namespace healthwise::server {

namespace fs = std::filesystem;
using wire::Node;
using wire::Request;

namespace {

ServerConfig prepared(ServerConfig config)
{
	config.validate();
	std::error_code ec;
	fs::create_directories(config.data_dir, ec);
	if (ec)
		throw Error(ErrorCode::StorageFailure, "cannot create data directory " + config.data_dir.string());
	return config;
}

const std::string& field(const Request& request, std::string_view name)
{
	auto it = request.fields.find(name);
	if (it == request.fields.end())
		throw Error(ErrorCode::MissingField, request.op + " requires field '" + std::string(name) + "'");
	return it->second;
}

const std::string* optional_field(const Request& request, std::string_view name)
{
	auto it = request.fields.find(name);
	return it == request.fields.end() ? nullptr : &it->second;
}

std::string_view trimmed(std::string_view s)
{
	auto b = s.find_first_not_of(" \t\r\n");
	if (b == std::string_view::npos)
		return {};
	auto e = s.find_last_not_of(" \t\r\n");
	return s.substr(b, e - b + 1);
}

int to_int(std::string_view name, std::string_view text)
{
	auto t = trimmed(text);
	int value = 0;
	auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
	if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
		throw Error(ErrorCode::ValidationError, std::string(name) + " must be a whole number");
	return value;
}

double to_number(std::string_view name, std::string_view text)
{
	auto t = trimmed(text);
	double value = 0;
	auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
	if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value))
		throw Error(ErrorCode::ValidationError, std::string(name) + " must be a number");
	return value;
}

Node leaf(std::string name, long long value)
{
	return Node(std::move(name), std::to_string(value));
}

Node product_node(const catalog::ProductRecord& p)
{
	return Node("product", {},
				{Node("gtin", p.gtin13), Node("name", p.name),
				 Node("energyPer100g", wire::format_number(p.energy_kcal_per_100g)),
				 Node("proteinPer100g", wire::format_number(p.protein_g_per_100g)),
				 Node("fatPer100g", wire::format_number(p.fat_g_per_100g)),
				 Node("carbPer100g", wire::format_number(p.carb_g_per_100g))});
}

Node suggestions_node(const std::vector<exercise::ExercisePlanItem>& plan)
{
	Node list("suggestions");
	for (const auto& item : plan)
		list.children.push_back(Node("suggestion", {},
									 {Node("name", item.name), leaf("minutes", item.minutes),
									  leaf("burnsKcal", item.burns_kcal)}));
	return list;
}

Node profile_node(const energy::UserProfile& p)
{
	return Node("profile", {},
				{Node("userId", p.id), Node("name", p.name), Node("gender", std::string(energy::to_string(p.gender))),
				 leaf("age", p.age), leaf("heightCm", p.height_cm), Node("weightKg", wire::format_number(p.weight_kg)),
				 Node("activity", std::string(energy::to_string(p.activity))), Node("email", p.email)});
}

// Overlays the profile fields present in the request.
void apply_profile_fields(energy::UserProfile& p, const Request& request)
{
	if (auto v = optional_field(request, "name"))
		p.name = *v;
	if (auto v = optional_field(request, "gender"))
		p.gender = energy::parse_gender(trimmed(*v));
	if (auto v = optional_field(request, "age"))
		p.age = to_int("age", *v);
	if (auto v = optional_field(request, "heightCm"))
		p.height_cm = to_int("heightCm", *v);
	if (auto v = optional_field(request, "weightKg"))
		p.weight_kg = to_number("weightKg", *v);
	if (auto v = optional_field(request, "activity"))
		p.activity = energy::parse_activity(trimmed(*v));
	if (auto v = optional_field(request, "email"))
		p.email = std::string(trimmed(*v));
}

std::vector<std::string_view> segments(std::string_view path)
{
	std::vector<std::string_view> out;
	while (!path.empty()) {
		auto slash = path.find('/');
		auto part = path.substr(0, slash);
		if (!part.empty())
			out.push_back(part);
		if (slash == std::string_view::npos)
			break;
		path.remove_prefix(slash + 1);
	}
	return out;
}

std::string dump(const nlohmann::json& j)
{
	return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

RestResponse fault_response(ErrorCode code, const std::string& message)
{
	return {http_status(code), dump(wire::fault_json({code, message}))};
}

} // namespace

int http_status(ErrorCode code)
{
	switch (code) {
	case ErrorCode::ProductNotFound:
	case ErrorCode::NoSuchUser:
	case ErrorCode::UnknownOperation: return 404;
	case ErrorCode::StorageFailure:
	case ErrorCode::InternalError: return 500;
	default: return 400;
	}
}

Service::Service(ServerConfig config, Clock clock)
	: _config(prepared(std::move(config))),
	  _clock(std::move(clock)),
	  _catalog(_config.catalog_file()),
	  _ledger(_config.log_file()),
	  _profiles(_config.profiles_file()),
	  _outbox(_config.outbox_file(), _config.smtp)
{
	if (_config.seed_catalog && _catalog.size() == 0) {
		auto seed = catalog::read_products(*_config.seed_catalog);
		_catalog.upsert_batch(seed);
		spdlog::info("seeded catalog with {} products from {}", seed.size(), _config.seed_catalog->string());
	}
}

Node Service::dispatch(const Request& request)
{
	const auto& op = request.op;
	if (op == "GetProduct")
		return get_product(request);
	if (op == "CheckEnergy")
		return check_energy(request);
	if (op == "AddConsumption")
		return add_consumption(request);
	if (op == "GetExercises")
		return get_exercises(request);
	if (op == "CreateProfile")
		return create_profile(request);
	if (op == "UpdateProfile")
		return update_profile(request);
	if (op == "DeleteProfile")
		return delete_profile(request);
	if (op == "GetProfiles")
		return get_profiles();
	if (op == "GetLog")
		return get_log(request);
	throw Error(ErrorCode::UnknownOperation, "unknown operation '" + op + "'");
}

catalog::ProductRecord Service::product_for(std::string_view barcode) const
{
	auto gtin = barcode::validate_code(barcode);
	return _catalog.lookup(gtin.digits13());
}

Node Service::get_product(const Request& request) const
{
	return Node("GetProductResponse", {}, {product_node(product_for(field(request, "barcode")))});
}

Node Service::check_energy(const Request& request) const
{
	auto profile = _profiles.get(field(request, "userId"));
	const auto& date = field(request, "date");
	auto meal = ledger::parse_meal(trimmed(field(request, "meal")));

	int candidate = 0;
	auto barcode = optional_field(request, "barcode");
	if (barcode && !trimmed(*barcode).empty()) {
		auto product = product_for(*barcode);
		candidate = catalog::energy_for_quantity(product, to_number("quantityG", field(request, "quantityG")));
	} else if (auto kcal = optional_field(request, "candidateKcal")) {
		candidate = to_int("candidateKcal", *kcal);
	}

	auto v = _ledger.check_energy(profile, date, candidate, meal, _config.energy, _config.chart);
	return Node("CheckEnergyResponse", {},
				{leaf("standardKcal", v.standard_kcal), leaf("requiredKcal", v.required_kcal),
				 leaf("consumedKcal", v.consumed_before_kcal), leaf("candidateKcal", v.candidate_kcal),
				 leaf("balanceKcal", v.balance_kcal), Node("status", std::string(ledger::to_string(v.status))),
				 leaf("excessKcal", v.excess_kcal),
				 Node("mealBudgets", {},
					  {leaf("breakfastKcal", v.meal_budgets.breakfast), leaf("lunchKcal", v.meal_budgets.lunch),
					   leaf("dinnerKcal", v.meal_budgets.dinner)}),
				 suggestions_node(v.suggestions)});
}

Node Service::add_consumption(const Request& request)
{
	auto profile = _profiles.get(field(request, "userId"));
	auto product = product_for(field(request, "barcode"));
	double quantity = to_number("quantityG", field(request, "quantityG"));
	auto meal = ledger::parse_meal(trimmed(field(request, "meal")));
	auto now = _clock();

	auto entry = _ledger.add_consumption(profile, field(request, "date"), product, quantity, meal, now);
	Node response("AddConsumptionResponse", {}, {Node("entryId", entry.entry_id), leaf("energyKcal", entry.energy_kcal)});
	try {
		_outbox.notify(profile, entry, product, now);
	} catch (const Error& e) {
		spdlog::error("entry {} recorded but notification failed: {}", entry.entry_id, e.what());
		response.children.emplace_back("warning", std::string("notification not recorded: ") + e.what());
	}
	return response;
}

Node Service::get_exercises(const Request& request) const
{
	int excess = to_int("excessKcal", field(request, "excessKcal"));
	return Node("GetExercisesResponse", {},
				{leaf("excessKcal", excess), suggestions_node(exercise::suggest(excess, _config.chart))});
}

Node Service::create_profile(const Request& request)
{
	for (auto name : {"name", "gender", "age", "heightCm", "weightKg", "activity", "email"})
		field(request, name);
	energy::UserProfile profile;
	apply_profile_fields(profile, request);
	auto stored = _profiles.create(profile);
	return Node("CreateProfileResponse", {}, {Node("userId", stored.id)});
}

Node Service::update_profile(const Request& request)
{
	auto profile = _profiles.get(field(request, "userId"));
	apply_profile_fields(profile, request);
	_profiles.update(profile);
	return Node("UpdateProfileResponse", {}, {Node("userId", profile.id)});
}

Node Service::delete_profile(const Request& request)
{
	const auto& id = field(request, "userId");
	_profiles.remove(id);
	return Node("DeleteProfileResponse", {}, {Node("userId", id)});
}

Node Service::get_profiles() const
{
	Node list("profiles");
	for (const auto& p : _profiles.list())
		list.children.push_back(profile_node(p));
	return Node("GetProfilesResponse", {}, {std::move(list)});
}

Node Service::get_log(const Request& request) const
{
	const auto& user = field(request, "userId");
	const auto& date = field(request, "date");
	if (!is_calendar_date(date))
		throw Error(ErrorCode::ValidationError, "date must be a calendar day written YYYY-MM-DD");

	Node entries("entries");
	int total = 0;
	for (const auto& e : _ledger.entries(user, date)) {
		total += e.energy_kcal;
		entries.children.push_back(Node(
			"entry", {},
			{Node("entryId", e.entry_id), Node("meal", std::string(ledger::to_string(e.meal))), Node("gtin", e.gtin13),
			 Node("quantityG", wire::format_number(e.quantity_g)), leaf("energyKcal", e.energy_kcal),
			 Node("timestamp", e.timestamp)}));
	}
	return Node("GetLogResponse", {},
				{Node("userId", user), Node("date", date), leaf("consumedKcal", total), std::move(entries)});
}

Node Service::decode(std::string_view pgm_bytes) const
{
	auto gtin = barcode::decode_image(pgm_bytes);
	return Node("DecodeResponse", {},
				{Node("gtin", gtin.digits13()), Node("symbology", std::string(barcode::to_string(gtin.symbology())))});
}

std::string Service::handle_soap(std::string_view body) noexcept
{
	try {
		try {
			auto parsed = wire::parse_envelope(body);
			if (std::holds_alternative<wire::Fault>(parsed))
				throw Error(ErrorCode::ValidationError, "a request envelope cannot carry a Fault");
			return wire::render_response(dispatch(std::get<Request>(parsed)));
		} catch (const Error& e) {
			return wire::render_fault({e.code(), e.what()});
		} catch (const std::exception& e) {
			spdlog::error("internal error handling SOAP request: {}", e.what());
			return wire::render_fault({ErrorCode::InternalError, "internal server error"});
		}
	} catch (...) {
		return {};
	}
}

RestResponse Service::handle_rest(std::string_view method, std::string_view path,
								  const std::multimap<std::string, std::string>& query, std::string_view body) noexcept
{
	try {
		try {
			auto parts = segments(path);
			auto query_value = [&](const char* key) -> std::optional<std::string> {
				auto it = query.find(key);
				return it == query.end() ? std::nullopt : std::optional(it->second);
			};
			auto body_fields = [&]() {
				auto j = nlohmann::json::parse(body, nullptr, false);
				if (j.is_discarded())
					throw Error(ErrorCode::ValidationError, "request body is not valid JSON");
				return wire::fields_from_json(j);
			};
			auto run = [&](std::string op, wire::Fields fields) {
				return RestResponse{200, dump(wire::to_json(dispatch({std::move(op), std::move(fields)})))};
			};
			auto wrong_method = [&]() {
				auto r = fault_response(ErrorCode::ValidationError,
										std::string(method) + " is not allowed on " + std::string(path));
				r.status = 405;
				return r;
			};

			if (parts.size() < 2 || parts[0] != "api")
				throw Error(ErrorCode::UnknownOperation, "no route for " + std::string(path));
			auto resource = parts[1];

			if (resource == "users" && parts.size() == 2) {
				if (method == "POST")
					return run("CreateProfile", body_fields());
				if (method == "GET")
					return run("GetProfiles", {});
				return wrong_method();
			}
			if (resource == "users" && parts.size() == 3) {
				if (method == "PUT") {
					auto fields = body_fields();
					fields["userId"] = std::string(parts[2]);
					return run("UpdateProfile", std::move(fields));
				}
				if (method == "DELETE")
					return run("DeleteProfile", {{"userId", std::string(parts[2])}});
				return wrong_method();
			}
			if (resource == "users" && parts.size() == 4 && parts[3] == "log") {
				if (method != "GET")
					return wrong_method();
				wire::Fields fields{{"userId", std::string(parts[2])}};
				if (auto date = query_value("date"))
					fields["date"] = *date;
				return run("GetLog", std::move(fields));
			}
			if (resource == "products" && parts.size() == 3) {
				if (method != "GET")
					return wrong_method();
				return run("GetProduct", {{"barcode", std::string(parts[2])}});
			}
			if (resource == "check" && parts.size() == 2) {
				if (method != "POST")
					return wrong_method();
				return run("CheckEnergy", body_fields());
			}
			if (resource == "consume" && parts.size() == 2) {
				if (method != "POST")
					return wrong_method();
				return run("AddConsumption", body_fields());
			}
			if (resource == "exercises" && parts.size() == 2) {
				if (method != "GET")
					return wrong_method();
				wire::Fields fields;
				if (auto excess = query_value("excess"))
					fields["excessKcal"] = *excess;
				return run("GetExercises", std::move(fields));
			}
			if (resource == "decode" && parts.size() == 2) {
				if (method != "POST")
					return wrong_method();
				return {200, dump(wire::to_json(decode(body)))};
			}
			throw Error(ErrorCode::UnknownOperation, "no route for " + std::string(path));
		} catch (const Error& e) {
			return fault_response(e.code(), e.what());
		} catch (const std::exception& e) {
			spdlog::error("internal error handling {} {}: {}", method, path, e.what());
			return fault_response(ErrorCode::InternalError, "internal server error");
		}
	} catch (...) {
		return {500, R"({"error":{"code":"InternalError","message":"internal server error"}})"};
	}
}

} // namespace healthwise::server
