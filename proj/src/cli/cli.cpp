/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/cli.h"

#include "healthwise/barcode.h"
#include "healthwise/catalog.h"
#include "healthwise/clock.h"
#include "healthwise/server/http.h"
#include "healthwise/server/service.h"

#include <CLI11.hpp>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include <unistd.h>

namespace healthwise::cli {

using wire::Fields;
using wire::Node;

namespace {

struct UsageError : std::runtime_error
{
	const CLI::App* app;
	UsageError(const CLI::App* a, const std::string& msg) : std::runtime_error(msg), app(a) {}
};

std::string text(const Node& node, std::string_view name)
{
	auto c = node.child(name);
	return c ? c->text : std::string();
}

std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(ErrorCode::StorageFailure, "cannot read " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

class Printer
{
public:
	Printer(std::ostream& out, std::ostream& err, bool json, bool color)
		: _out(out), _err(err), _json(json), _color(color)
	{}

	bool json() const { return _json; }

	void response(const Node& node)
	{
		if (_json) {
			_out << wire::to_json(node).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
			return;
		}
		const auto& n = node.name;
		if (n == "GetProductResponse")
			product(*node.child("product"));
		else if (n == "CheckEnergyResponse")
			verdict(node);
		else if (n == "AddConsumptionResponse") {
			_out << "recorded " << text(node, "entryId") << ": " << text(node, "energyKcal") << " kcal\n";
			if (auto w = node.child("warning"))
				_err << "warning: " << w->text << '\n';
		} else if (n == "GetExercisesResponse") {
			auto list = node.child("suggestions");
			if (!list || list->children.empty())
				_out << "no exercise needed\n";
			else
				exercises(*list);
		} else if (n == "CreateProfileResponse")
			_out << "created profile " << text(node, "userId") << '\n';
		else if (n == "UpdateProfileResponse")
			_out << "updated profile " << text(node, "userId") << '\n';
		else if (n == "DeleteProfileResponse")
			_out << "deleted profile " << text(node, "userId") << '\n';
		else if (n == "GetProfilesResponse")
			profiles(*node.child("profiles"));
		else if (n == "GetLogResponse")
			log(node);
		else if (n == "DecodeResponse")
			_out << text(node, "gtin") << '\n';
		else
			_out << n << '\n';
	}

	void fault(const Error& e)
	{
		if (_json)
			_out << wire::fault_json({e.code(), e.what()}).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
				 << '\n';
		else
			_err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
	}

private:
	void product(const Node& p)
	{
		_out << text(p, "gtin") << "  " << text(p, "name") << '\n'
			 << "  energy " << text(p, "energyPer100g") << " kcal/100g, protein " << text(p, "proteinPer100g")
			 << " g, fat " << text(p, "fatPer100g") << " g, carbohydrate " << text(p, "carbPer100g") << " g\n";
	}

	void verdict(const Node& v)
	{
		bool red = text(v, "status") == "red";
		std::string word = red ? "RED" : "GREEN";
		if (_color)
			word = (red ? "\x1b[31m" : "\x1b[32m") + word + "\x1b[0m";
		_out << word << "  balance " << text(v, "balanceKcal") << " kcal (required " << text(v, "requiredKcal")
			 << ", consumed " << text(v, "consumedKcal") << ", this item " << text(v, "candidateKcal") << ")\n";
		if (auto b = v.child("mealBudgets"))
			_out << "  meal budgets: breakfast " << text(*b, "breakfastKcal") << ", lunch " << text(*b, "lunchKcal")
				 << ", dinner " << text(*b, "dinnerKcal") << '\n';
		if (red) {
			_out << "  exceeded by " << text(v, "excessKcal") << " kcal; any one of:\n";
			if (auto list = v.child("suggestions"))
				exercises(*list);
		}
	}

	void exercises(const Node& list)
	{
		for (const auto& s : list.children)
			_out << "  exercise: " << text(s, "name") << ' ' << text(s, "minutes") << " min (burns "
				 << text(s, "burnsKcal") << " kcal)\n";
	}

	void profiles(const Node& list)
	{
		if (list.children.empty()) {
			_out << "no profiles\n";
			return;
		}
		for (const auto& p : list.children)
			_out << text(p, "userId") << "  " << text(p, "name") << "  " << text(p, "gender") << ", "
				 << text(p, "age") << " y, " << text(p, "heightCm") << " cm, " << text(p, "weightKg") << " kg, "
				 << text(p, "activity") << "  " << text(p, "email") << '\n';
	}

	void log(const Node& node)
	{
		_out << text(node, "userId") << ' ' << text(node, "date") << ": " << text(node, "consumedKcal")
			 << " kcal\n";
		if (auto list = node.child("entries"))
			for (const auto& e : list->children)
				_out << "  " << text(e, "entryId") << "  " << text(e, "meal") << "  " << text(e, "gtin") << "  "
					 << text(e, "quantityG") << " g  " << text(e, "energyKcal") << " kcal  " << text(e, "timestamp")
					 << '\n';
	}

	std::ostream& _out;
	std::ostream& _err;
	bool _json;
	bool _color;
};

struct ProfileOptions
{
	std::optional<std::string> name, gender, age, height, weight, activity, email;

	void add_to(CLI::App* cmd)
	{
		cmd->add_option("--name", name, "Display name");
		cmd->add_option("--gender", gender, "male or female");
		cmd->add_option("--age", age, "Age in years");
		cmd->add_option("--height", height, "Height in cm");
		cmd->add_option("--weight", weight, "Weight in kg");
		cmd->add_option("--activity", activity, "sedentary, moderate or high");
		cmd->add_option("--email", email, "Notification address");
	}

	Fields fields() const
	{
		Fields f;
		auto put = [&f](const char* key, const std::optional<std::string>& v) {
			if (v)
				f[key] = *v;
		};
		put("name", name);
		put("gender", gender);
		put("age", age);
		put("heightCm", height);
		put("weightKg", weight);
		put("activity", activity);
		put("email", email);
		return f;
	}
};

// The app gate: barcode capture needs at least one profile, or the named one.
void require_profile(const SoapClient& client, const std::string& user)
{
	auto list = client.call("GetProfiles", {});
	const auto* profiles = list.child("profiles");
	if (!profiles || profiles->children.empty())
		throw Error(ErrorCode::NoSuchUser, "no profile exists yet; create one with 'healthwise profile create'");
	if (user.empty())
		return;
	for (const auto& p : profiles->children)
		if (text(p, "userId") == user)
			return;
	throw Error(ErrorCode::NoSuchUser, "no profile with id '" + user + "'");
}

int serve(const std::optional<std::string>& config_path, const std::optional<int>& port,
		  const std::optional<std::string>& data_dir, const std::optional<std::string>& seed, const std::string& host,
		  std::ostream& out)
{
	auto config = config_path ? server::ServerConfig::load(*config_path) : server::ServerConfig{};
	if (port)
		config.port = *port;
	if (data_dir)
		config.data_dir = *data_dir;
	if (seed)
		config.seed_catalog = *seed;

	server::Service service(config);
	server::HttpServer http(service);
	int bound = http.bind(host, config.port);
	out << "healthwise server on http://" << host << ':' << bound << " (data in " << config.data_dir.string()
		<< ")\n"
		<< std::flush;
	http.listen();
	return kSuccess;
}

} // namespace

SoapClient::SoapClient(std::string url) : _url(std::move(url))
{
	static const std::regex shape(R"(^http://[A-Za-z0-9._\-]+(:[0-9]{1,5})?/?$)");
	if (!std::regex_match(_url, shape))
		throw Error(ErrorCode::ValidationError, "server URL must look like http://host[:port], got '" + _url + "'");
	if (_url.back() == '/')
		_url.pop_back();
}

Node SoapClient::call(std::string_view op, const Fields& fields) const
{
	httplib::Client http(_url);
	http.set_connection_timeout(5);
	http.set_read_timeout(30);
	auto res = http.Post("/soap", wire::render_request(op, fields), "text/xml; charset=utf-8");
	if (!res)
		throw Error(ErrorCode::InternalError, "cannot reach server at " + _url + ": " + httplib::to_string(res.error()));
	if (res->status != 200)
		throw Error(ErrorCode::InternalError, "server answered HTTP " + std::to_string(res->status));
	auto parsed = wire::parse_response(res->body);
	if (auto* fault = std::get_if<wire::Fault>(&parsed))
		throw Error(fault->code, fault->message);
	return std::get<Node>(std::move(parsed));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"healthwise: barcode nutrition lookup and daily energy budget", "healthwise"};
	app.fallthrough();
	app.require_subcommand(1);
	app.failure_message(CLI::FailureMessage::help);

	std::string server_url = "http://127.0.0.1:8080";
	std::string output = "human";
	std::string user;
	std::string date;
	app.add_option("--server", server_url, "Server URL")->envname("HW_SERVER_URL")->capture_default_str();
	app.add_option("--output", output, "human or json")
		->check(CLI::IsMember({"human", "json"}))
		->capture_default_str();
	app.add_option("--user", user, "Profile id")->envname("HW_USER");
	app.add_option("--date", date, "Calendar day YYYY-MM-DD (default: today)");

	// serve
	auto* serve_cmd = app.add_subcommand("serve", "Run the nutrition server");
	std::optional<int> port;
	std::optional<std::string> data_dir, config_path, seed;
	std::string host = "0.0.0.0";
	serve_cmd->add_option("--port", port, "Listen port")->envname("HW_PORT");
	serve_cmd->add_option("--data-dir", data_dir, "Data directory")->envname("HW_DATA_DIR");
	serve_cmd->add_option("--config", config_path, "Configuration file (JSON)");
	serve_cmd->add_option("--seed", seed, "Product file imported into an empty catalog");
	serve_cmd->add_option("--host", host, "Listen address")->capture_default_str();

	// profile
	auto* profile_cmd = app.add_subcommand("profile", "Manage profiles");
	profile_cmd->require_subcommand(1);
	ProfileOptions create_opts, update_opts;
	auto* p_create = profile_cmd->add_subcommand("create", "Create a profile");
	create_opts.add_to(p_create);
	auto* p_update = profile_cmd->add_subcommand("update", "Change fields of a profile");
	std::string update_id, delete_id;
	p_update->add_option("id", update_id, "Profile id (default: --user)");
	update_opts.add_to(p_update);
	auto* p_delete = profile_cmd->add_subcommand("delete", "Delete a profile (its log is kept)");
	p_delete->add_option("id", delete_id, "Profile id (default: --user)");
	auto* p_list = profile_cmd->add_subcommand("list", "List profiles");

	// scan
	auto* scan_cmd = app.add_subcommand("scan", "Decode a barcode image (PGM), optionally checking a quantity");
	std::string scan_path;
	std::optional<std::string> scan_qty, scan_meal;
	scan_cmd->add_option("image", scan_path, "Binary PGM image")->required();
	scan_cmd->add_option("--qty", scan_qty, "Quantity in grams; runs an energy check");
	scan_cmd->add_option("--meal", scan_meal, "breakfast, lunch or dinner");

	// lookup
	auto* lookup_cmd = app.add_subcommand("lookup", "Show a product");
	std::string lookup_code;
	lookup_cmd->add_option("code", lookup_code, "EAN-13, UPC-A or EAN-8 digits")->required();

	// check
	auto* check_cmd = app.add_subcommand("check", "Energy verdict for a candidate item");
	std::optional<std::string> check_code, check_qty, check_meal, check_kcal;
	check_cmd->add_option("--code", check_code, "Product code");
	check_cmd->add_option("--qty", check_qty, "Quantity in grams");
	check_cmd->add_option("--meal", check_meal, "breakfast, lunch or dinner")->required();
	check_cmd->add_option("--kcal", check_kcal, "Candidate energy instead of a product");

	// consume
	auto* consume_cmd = app.add_subcommand("consume", "Record a consumption");
	std::string consume_code, consume_qty, consume_meal;
	consume_cmd->add_option("--code", consume_code, "Product code")->required();
	consume_cmd->add_option("--qty", consume_qty, "Quantity in grams")->required();
	consume_cmd->add_option("--meal", consume_meal, "breakfast, lunch or dinner")->required();

	// exercises
	auto* exercises_cmd = app.add_subcommand("exercises", "Exercises that burn an energy excess");
	std::string excess;
	exercises_cmd->add_option("--excess", excess, "Excess in kcal")->required();

	// log
	auto* log_cmd = app.add_subcommand("log", "Show a day's consumption");

	// catalog import
	auto* catalog_cmd = app.add_subcommand("catalog", "Catalog administration");
	catalog_cmd->require_subcommand(1);
	auto* import_cmd = catalog_cmd->add_subcommand("import", "Import a product file into the catalog (offline)");
	std::string import_file;
	std::optional<std::string> import_dir, import_config;
	import_cmd->add_option("file", import_file, "JSON-lines product file")->required();
	import_cmd->add_option("--data-dir", import_dir, "Data directory")->envname("HW_DATA_DIR");
	import_cmd->add_option("--config", import_config, "Configuration file (JSON)");

	// render
	auto* render_cmd = app.add_subcommand("render", "Write a synthetic barcode image (PGM)");
	std::string render_code, render_out;
	int render_scale = 3, render_height = 60, render_quiet = 10;
	render_cmd->add_option("code", render_code, "EAN-13, UPC-A or EAN-8 digits")->required();
	render_cmd->add_option("-o,--out", render_out, "Output file")->required();
	render_cmd->add_option("--scale", render_scale, "Pixels per module")->check(CLI::Range(1, 50));
	render_cmd->add_option("--height", render_height, "Image height")->check(CLI::Range(1, 10000));
	render_cmd->add_option("--quiet", render_quiet, "Quiet zone in modules")->check(CLI::Range(0, 100));

	std::vector<const char*> argv;
	for (const auto& a : args)
		argv.push_back(a.c_str());

	try {
		app.parse(static_cast<int>(argv.size()), argv.data());
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e, out, err);
		return code == 0 ? kSuccess : kUsage;
	}

	bool color = &out == &std::cout && ::isatty(STDOUT_FILENO);
	Printer print(out, err, output == "json", color);
	if (date.empty())
		date = local_date(system_now());

	auto need_user = [&user](const CLI::App* cmd) {
		if (user.empty())
			throw UsageError(cmd, "--user (or HW_USER) is required");
	};

	try {
		if (serve_cmd->parsed())
			return serve(config_path, port, data_dir, seed, host, out);

		if (import_cmd->parsed()) {
			auto config = import_config ? server::ServerConfig::load(*import_config) : server::ServerConfig{};
			if (import_dir)
				config.data_dir = *import_dir;
			std::filesystem::create_directories(config.catalog_file().parent_path());
			auto records = catalog::read_products(std::filesystem::path(import_file));
			catalog::Catalog store(config.catalog_file());
			store.upsert_batch(records);
			out << "imported " << records.size() << " products into " << config.catalog_file().string() << " ("
				<< store.size() << " total)\n";
			return kSuccess;
		}

		if (render_cmd->parsed()) {
			auto gtin = barcode::validate_code(render_code);
			auto image = barcode::render(barcode::encode(gtin, gtin.symbology()), render_scale, render_height,
										 render_quiet);
			std::ofstream file(render_out, std::ios::binary);
			file << barcode::write_pgm(image);
			if (!file)
				throw Error(ErrorCode::StorageFailure, "cannot write " + render_out);
			out << "wrote " << render_out << '\n';
			return kSuccess;
		}

		std::optional<SoapClient> maybe_client;
		try {
			maybe_client.emplace(server_url);
		} catch (const Error& e) {
			throw UsageError(&app, e.what());
		}
		const auto& client = *maybe_client;

		if (p_create->parsed()) {
			print.response(client.call("CreateProfile", create_opts.fields()));
		} else if (p_update->parsed()) {
			auto fields = update_opts.fields();
			fields["userId"] = update_id.empty() ? user : update_id;
			if (fields["userId"].empty())
				throw UsageError(p_update, "give the profile id or --user");
			print.response(client.call("UpdateProfile", fields));
		} else if (p_delete->parsed()) {
			auto id = delete_id.empty() ? user : delete_id;
			if (id.empty())
				throw UsageError(p_delete, "give the profile id or --user");
			print.response(client.call("DeleteProfile", {{"userId", id}}));
		} else if (p_list->parsed()) {
			print.response(client.call("GetProfiles", {}));
		} else if (scan_cmd->parsed()) {
			bool chain = scan_qty.has_value() || scan_meal.has_value();
			if (chain) {
				need_user(scan_cmd);
				if (!scan_qty || !scan_meal)
					throw UsageError(scan_cmd, "--qty and --meal go together");
			}
			require_profile(client, user);
			auto gtin = barcode::decode_image(read_file(scan_path));
			if (!chain) {
				print.response(Node("DecodeResponse", {},
									{Node("gtin", gtin.digits13()),
									 Node("symbology", std::string(barcode::to_string(gtin.symbology())))}));
			} else {
				if (!print.json())
					out << gtin.digits13() << '\n';
				print.response(client.call("CheckEnergy", {{"userId", user},
														   {"date", date},
														   {"barcode", gtin.digits13()},
														   {"quantityG", *scan_qty},
														   {"meal", *scan_meal}}));
			}
		} else if (lookup_cmd->parsed()) {
			print.response(client.call("GetProduct", {{"barcode", lookup_code}}));
		} else if (check_cmd->parsed()) {
			need_user(check_cmd);
			Fields fields{{"userId", user}, {"date", date}, {"meal", *check_meal}};
			if (check_code) {
				if (!check_qty)
					throw UsageError(check_cmd, "--code needs --qty");
				if (check_kcal)
					throw UsageError(check_cmd, "give either --code/--qty or --kcal");
				fields["barcode"] = *check_code;
				fields["quantityG"] = *check_qty;
			} else if (check_kcal) {
				fields["candidateKcal"] = *check_kcal;
			} else if (check_qty) {
				throw UsageError(check_cmd, "--qty needs --code");
			}
			print.response(client.call("CheckEnergy", fields));
		} else if (consume_cmd->parsed()) {
			need_user(consume_cmd);
			print.response(client.call("AddConsumption", {{"userId", user},
														  {"date", date},
														  {"barcode", consume_code},
														  {"quantityG", consume_qty},
														  {"meal", consume_meal}}));
		} else if (exercises_cmd->parsed()) {
			print.response(client.call("GetExercises", {{"excessKcal", excess}}));
		} else if (log_cmd->parsed()) {
			need_user(log_cmd);
			print.response(client.call("GetLog", {{"userId", user}, {"date", date}}));
		}
		return kSuccess;
	} catch (const UsageError& e) {
		err << "error: " << e.what() << "\n\n" << e.app->help();
		return kUsage;
	} catch (const Error& e) {
		print.fault(e);
		return kFault;
	} catch (const std::exception& e) {
		print.fault(Error(ErrorCode::InternalError, e.what()));
		return kFault;
	}
}

} // namespace healthwise::cli
