/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/server/profiles.h"

#include "healthwise/error.h"

#include <charconv>
#include <mutex>

namespace healthwise::server {

namespace {

std::optional<long> id_number(std::string_view id)
{
	if (id.size() < 2 || id[0] != 'u')
		return std::nullopt;
	long n = 0;
	auto [ptr, ec] = std::from_chars(id.data() + 1, id.data() + id.size(), n);
	if (ec != std::errc() || ptr != id.data() + id.size() || n <= 0 || id[1] == '0')
		return std::nullopt;
	return n;
}

[[noreturn]] void no_such_user(std::string_view id)
{
	throw Error(ErrorCode::NoSuchUser, "no profile with id '" + std::string(id) + "'");
}

} // namespace

nlohmann::json to_json(const energy::UserProfile& p)
{
	return {
		{"id", p.id},
		{"name", p.name},
		{"gender", energy::to_string(p.gender)},
		{"age", p.age},
		{"height_cm", p.height_cm},
		{"weight_kg", p.weight_kg},
		{"activity", energy::to_string(p.activity)},
		{"email", p.email},
	};
}

energy::UserProfile profile_from_json(const nlohmann::json& j)
{
	try {
		energy::UserProfile p;
		p.id = j.at("id").get<std::string>();
		p.name = j.at("name").get<std::string>();
		p.gender = energy::parse_gender(j.at("gender").get<std::string>());
		p.age = j.at("age").get<int>();
		p.height_cm = j.at("height_cm").get<int>();
		p.weight_kg = j.at("weight_kg").get<double>();
		p.activity = energy::parse_activity(j.at("activity").get<std::string>());
		p.email = j.at("email").get<std::string>();
		return p;
	} catch (const nlohmann::json::exception& e) {
		throw Error(ErrorCode::StorageFailure, std::string("bad profile record: ") + e.what());
	}
}

ProfileStore::ProfileStore(std::filesystem::path file) : _file(std::in_place, std::move(file))
{
	for (const auto& change : _file->replay())
		apply(change);
}

void ProfileStore::apply(const nlohmann::json& change)
{
	auto id = change.value("id", std::string());
	auto n = id_number(id);
	if (!n)
		throw Error(ErrorCode::StorageFailure, "profile record with bad id '" + id + "'");
	_last_id = std::max(_last_id, *n);
	if (change.value("deleted", false))
		_profiles.erase(*n);
	else
		_profiles[*n] = profile_from_json(change);
}

energy::UserProfile ProfileStore::create(energy::UserProfile profile)
{
	energy::validate(profile);
	std::unique_lock lock(_mutex);
	long n = _last_id + 1;
	profile.id = "u" + std::to_string(n);
	if (_file)
		_file->append(to_json(profile));
	_last_id = n;
	_profiles[n] = profile;
	return profile;
}

energy::UserProfile ProfileStore::update(const energy::UserProfile& profile)
{
	energy::validate(profile);
	std::unique_lock lock(_mutex);
	auto n = id_number(profile.id);
	if (!n || !_profiles.count(*n))
		no_such_user(profile.id);
	if (_file)
		_file->append(to_json(profile));
	_profiles[*n] = profile;
	return profile;
}

void ProfileStore::remove(std::string_view id)
{
	std::unique_lock lock(_mutex);
	auto n = id_number(id);
	if (!n || !_profiles.count(*n))
		no_such_user(id);
	if (_file)
		_file->append({{"id", std::string(id)}, {"deleted", true}});
	_profiles.erase(*n);
}

energy::UserProfile ProfileStore::get(std::string_view id) const
{
	std::shared_lock lock(_mutex);
	auto n = id_number(id);
	if (!n)
		no_such_user(id);
	auto it = _profiles.find(*n);
	if (it == _profiles.end())
		no_such_user(id);
	return it->second;
}

std::vector<energy::UserProfile> ProfileStore::list() const
{
	std::shared_lock lock(_mutex);
	std::vector<energy::UserProfile> out;
	for (const auto& [n, p] : _profiles)
		out.push_back(p);
	return out;
}

} // namespace healthwise::server
