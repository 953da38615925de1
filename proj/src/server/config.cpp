/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/server/config.h"

#include "healthwise/error.h"

#include <fstream>

namespace healthwise::server {

namespace fs = std::filesystem;

namespace {

fs::path or_default(const fs::path& configured, const fs::path& dir, const char* name)
{
	return configured.empty() ? dir / name : configured;
}

template <typename T>
T get(const nlohmann::json& j, const char* key)
{
	try {
		return j.at(key).get<T>();
	} catch (const nlohmann::json::exception&) {
		throw Error(ErrorCode::ValidationError, std::string("configuration: bad or missing '") + key + "'");
	}
}

} // namespace

fs::path ServerConfig::catalog_file() const
{
	return or_default(catalog_path, data_dir, "catalog.jsonl");
}

fs::path ServerConfig::log_file() const
{
	return or_default(log_path, data_dir, "log.jsonl");
}

fs::path ServerConfig::profiles_file() const
{
	return or_default(profiles_path, data_dir, "profiles.jsonl");
}

fs::path ServerConfig::outbox_file() const
{
	return or_default(outbox_path, data_dir, "outbox.jsonl");
}

void ServerConfig::apply(const nlohmann::json& doc)
{
	if (!doc.is_object())
		throw Error(ErrorCode::ValidationError, "configuration must be a JSON object");

	if (doc.contains("port"))
		port = get<int>(doc, "port");
	if (doc.contains("dataDir"))
		data_dir = get<std::string>(doc, "dataDir");
	if (doc.contains("catalogPath"))
		catalog_path = get<std::string>(doc, "catalogPath");
	if (doc.contains("logPath"))
		log_path = get<std::string>(doc, "logPath");
	if (doc.contains("profilesPath"))
		profiles_path = get<std::string>(doc, "profilesPath");
	if (doc.contains("outboxPath"))
		outbox_path = get<std::string>(doc, "outboxPath");
	if (doc.contains("seedCatalog"))
		seed_catalog = fs::path(get<std::string>(doc, "seedCatalog"));

	if (doc.contains("requirementTable")) {
		std::vector<energy::RequirementRow> rows;
		for (const auto& r : doc.at("requirementTable"))
			rows.push_back({energy::parse_gender(get<std::string>(r, "gender")), get<int>(r, "age_min"),
							get<int>(r, "age_max"), get<int>(r, "standard_kcal")});
		energy.table = energy::RequirementTable(std::move(rows));
	}
	if (doc.contains("activityFactors")) {
		const auto& f = doc.at("activityFactors");
		energy.factors = {get<double>(f, "sedentary"), get<double>(f, "moderate"), get<double>(f, "high")};
	}
	if (doc.contains("mealSplit")) {
		const auto& s = doc.at("mealSplit");
		energy.split = {get<double>(s, "breakfast"), get<double>(s, "lunch"), get<double>(s, "dinner")};
	}
	if (doc.contains("exerciseChart")) {
		chart.clear();
		for (const auto& e : doc.at("exerciseChart"))
			chart.push_back({get<std::string>(e, "name"), get<double>(e, "burn_rate_kcal_per_min")});
	}
	if (doc.contains("smtp")) {
		const auto& s = doc.at("smtp");
		smtp = SmtpSettings{get<std::string>(s, "host"), s.value("port", 25), get<std::string>(s, "from")};
	}
}

void ServerConfig::validate() const
{
	if (port < 0 || port > 65535)
		throw Error(ErrorCode::ValidationError, "port out of range");
	energy.table.require_full_coverage();
	energy.factors.validate();
	energy.split.validate();
	if (chart.empty())
		throw Error(ErrorCode::EmptyChart, "exercise chart is empty");
	for (const auto& e : chart)
		exercise::validate(e);
}

ServerConfig ServerConfig::load(const fs::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw Error(ErrorCode::StorageFailure, "cannot read configuration " + path.string());
	auto doc = nlohmann::json::parse(in, nullptr, false);
	if (doc.is_discarded())
		throw Error(ErrorCode::ValidationError, path.string() + " is not valid JSON");
	ServerConfig config;
	config.apply(doc);
	config.validate();
	return config;
}

} // namespace healthwise::server
