/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "healthwise/energy.h"
#include "healthwise/jsonl.h"

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <vector>

namespace healthwise::server {

nlohmann::json to_json(const energy::UserProfile& profile);
energy::UserProfile profile_from_json(const nlohmann::json& j);

/**
 * Profiles kept on the server. The backing file is an append-only change log
 * (one full profile per create/update, a tombstone per delete) replayed at
 * startup, so assigned ids are never reused.
 */
class ProfileStore
{
public:
	ProfileStore() = default;
	explicit ProfileStore(std::filesystem::path file);

	// Assigns a fresh id ("u1", "u2", ...) and returns the stored profile.
	energy::UserProfile create(energy::UserProfile profile);
	energy::UserProfile update(const energy::UserProfile& profile);
	void remove(std::string_view id);

	energy::UserProfile get(std::string_view id) const; // NoSuchUser
	std::vector<energy::UserProfile> list() const;

private:
	void apply(const nlohmann::json& change);

	std::optional<store::JsonLines> _file;
	mutable std::shared_mutex _mutex;
	std::map<long, energy::UserProfile> _profiles;
	long _last_id = 0;
};

} // namespace healthwise::server
