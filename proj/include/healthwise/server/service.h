/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "healthwise/catalog.h"
#include "healthwise/clock.h"
#include "healthwise/ledger.h"
#include "healthwise/server/config.h"
#include "healthwise/server/outbox.h"
#include "healthwise/server/profiles.h"
#include "healthwise/wire.h"

#include <map>
#include <string>
#include <string_view>

namespace healthwise::server {

struct RestResponse
{
	int status = 200;
	std::string body; // JSON
};

// HTTP status used by the JSON facade for a fault code.
int http_status(ErrorCode code);

/**
 * The Nutrition Server without its transport: profile store, catalog, daily
 * log and outbox, plus the operation dispatcher that both the XML endpoint
 * and the JSON facade call into. All stores are file-backed under the
 * configured data directory and replayed on construction.
 */
class Service
{
public:
	explicit Service(ServerConfig config, Clock clock = system_now);

	const ServerConfig& config() const noexcept { return _config; }

	// Runs one protocol operation. Throws Error with a code from the closed vocabulary.
	wire::Node dispatch(const wire::Request& request);

	// Decodes a binary PGM upload into DecodeResponse{gtin, symbology}.
	wire::Node decode(std::string_view pgm_bytes) const;

	// POST /soap body in, envelope out. Never throws; every failure becomes a Fault.
	std::string handle_soap(std::string_view body) noexcept;

	// One JSON facade call. Never throws.
	RestResponse handle_rest(std::string_view method, std::string_view path,
							 const std::multimap<std::string, std::string>& query, std::string_view body) noexcept;

	catalog::Catalog& catalog() noexcept { return _catalog; }
	ledger::Ledger& ledger() noexcept { return _ledger; }
	ProfileStore& profiles() noexcept { return _profiles; }
	Outbox& outbox() noexcept { return _outbox; }

private:
	wire::Node get_product(const wire::Request& request) const;
	wire::Node check_energy(const wire::Request& request) const;
	wire::Node add_consumption(const wire::Request& request);
	wire::Node get_exercises(const wire::Request& request) const;
	wire::Node create_profile(const wire::Request& request);
	wire::Node update_profile(const wire::Request& request);
	wire::Node delete_profile(const wire::Request& request);
	wire::Node get_profiles() const;
	wire::Node get_log(const wire::Request& request) const;

	catalog::ProductRecord product_for(std::string_view barcode) const;

	ServerConfig _config;
	Clock _clock;
	catalog::Catalog _catalog;
	ledger::Ledger _ledger;
	ProfileStore _profiles;
	Outbox _outbox;
};

} // namespace healthwise::server
