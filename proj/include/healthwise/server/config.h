/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "healthwise/energy.h"
#include "healthwise/exercise.h"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace healthwise::server {

struct SmtpSettings
{
	std::string host;
	int port = 25;
	std::string from;
};

struct ServerConfig
{
	int port = 8080;
	std::filesystem::path data_dir = "data";

	// Empty means "<data_dir>/<default name>".
	std::filesystem::path catalog_path;
	std::filesystem::path log_path;
	std::filesystem::path profiles_path;
	std::filesystem::path outbox_path;

	// Imported into an empty catalog at startup.
	std::optional<std::filesystem::path> seed_catalog;

	energy::EnergyModel energy;
	exercise::Chart chart = exercise::default_chart();
	std::optional<SmtpSettings> smtp;

	std::filesystem::path catalog_file() const;
	std::filesystem::path log_file() const;
	std::filesystem::path profiles_file() const;
	std::filesystem::path outbox_file() const;

	// Overlays the keys present in a configuration document. ValidationError on bad values.
	void apply(const nlohmann::json& document);

	// Module invariants plus full requirement-table coverage.
	void validate() const;

	static ServerConfig load(const std::filesystem::path& path);
};

} // namespace healthwise::server
