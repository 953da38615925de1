/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one line per criterion, nonzero exit when any fails.

#include "../support/oracle.h"
#include "../support/server_fixture.h"

#include "healthwise/barcode.h"
#include "healthwise/energy.h"
#include "healthwise/error.h"
#include "healthwise/wire.h"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace healthwise;
using testing_support::ServerFixture;
using wire::Fields;
using wire::Node;

namespace {

struct Outcome
{
	bool pass = true;
	std::string detail;
};

// Collects failed expectations; the first few are reported.
class Expect
{
public:
	void operator()(bool ok, const std::string& what)
	{
		if (ok)
			return;
		if (_failures++ < 3)
			_first += (_first.empty() ? "" : "; ") + what;
	}
	bool ok() const { return _failures == 0; }
	std::string failures() const
	{
		return _first + (_failures > 3 ? "; ... " + std::to_string(_failures) + " in all" : "");
	}

private:
	int _failures = 0;
	std::string _first;
};

Outcome finish(const Expect& expect, std::string detail)
{
	if (expect.ok())
		return {true, std::move(detail)};
	return {false, expect.failures()};
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::filesystem::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string golden(const char* name)
{
	return slurp(std::filesystem::path(HW_GOLDEN_DIR) / name);
}

std::string random_digits(std::mt19937& rng, int n)
{
	std::uniform_int_distribution<int> d(0, 9);
	std::string s;
	for (int i = 0; i < n; ++i)
		s += char('0' + d(rng));
	return s;
}

const Fields kReferenceProfile = {{"name", "Asha Rao"}, {"gender", "male"},  {"age", "20"},
								  {"heightCm", "170"},   {"weightKg", "60"},  {"activity", "high"},
								  {"email", "asha@example.com"}};
const char* kDay = "2026-10-17";

// One protocol call over HTTP; a Fault comes back as Error.
Node soap_call(httplib::Client& client, std::string_view op, const Fields& fields)
{
	auto res = client.Post("/soap", wire::render_request(op, fields), "text/xml; charset=utf-8");
	if (!res)
		throw Error(ErrorCode::InternalError, "no HTTP response");
	auto parsed = wire::parse_response(res->body);
	if (auto* f = std::get_if<wire::Fault>(&parsed))
		throw Error(f->code, f->message);
	return std::get<Node>(parsed);
}

std::string text(const Node& n, std::string_view child)
{
	auto c = n.child(child);
	return c ? c->text : "<missing>";
}

Outcome reference_requirement()
{
	Expect expect;
	energy::UserProfile p{"", "Asha Rao", energy::Gender::male, 20, 170, 60, energy::Activity::high, "asha@example.com"};
	auto r = energy::EnergyModel{}.evaluate(p);
	expect(r.standard_kcal == 2200, "library standard " + std::to_string(r.standard_kcal));
	expect(r.required_kcal == 2750, "library required " + std::to_string(r.required_kcal));

	ServerFixture f(true);
	httplib::Client client("127.0.0.1", f.port);
	nlohmann::json profile = {{"name", "Asha Rao"}, {"gender", "male"}, {"age", 20}, {"heightCm", 170},
							  {"weightKg", 60},      {"activity", "high"}, {"email", "asha@example.com"}};
	auto created = client.Post("/api/users", profile.dump(), "application/json");
	expect(created && created->status == 200, "POST /api/users failed");
	if (!created || created->status != 200)
		return finish(expect, "");
	auto id = nlohmann::json::parse(created->body)["userId"].get<std::string>();
	nlohmann::json check = {{"userId", id}, {"date", kDay}, {"meal", "breakfast"}, {"candidateKcal", 0}};
	auto res = client.Post("/api/check", check.dump(), "application/json");
	expect(res && res->status == 200, "POST /api/check failed");
	if (!res)
		return finish(expect, "");
	auto v = nlohmann::json::parse(res->body);
	expect(v["standardKcal"].is_number_integer() && v["standardKcal"] == 2200, "api standard " + v["standardKcal"].dump());
	expect(v["requiredKcal"].is_number_integer() && v["requiredKcal"] == 2750, "api required " + v["requiredKcal"].dump());
	return finish(expect, "standard 2200, required 2750 from library and POST /api/check");
}

Outcome reference_day()
{
	Expect expect;
	ServerFixture f(true);
	httplib::Client client("127.0.0.1", f.port);
	auto id = text(soap_call(client, "CreateProfile", kReferenceProfile), "userId");

	// Cream biscuits, 500 kcal/100 g: 300 g = 1500, 200 g = 1000, 100 g = 500.
	struct Step
	{
		const char* grams;
		const char* meal;
		const char* balance;
		const char* status;
		bool add;
	};
	const Step steps[] = {{"300", "breakfast", "1250", "green", true},
						  {"200", "lunch", "250", "green", true},
						  {"100", "dinner", "-250", "red", false}};
	std::string seen;
	for (const auto& s : steps) {
		Fields item{{"userId", id}, {"date", kDay}, {"meal", s.meal}, {"barcode", "4006381333931"}, {"quantityG", s.grams}};
		auto v = soap_call(client, "CheckEnergy", item);
		seen += (seen.empty() ? "" : ", ") + text(v, "balanceKcal") + " " + text(v, "status");
		expect(text(v, "balanceKcal") == s.balance, std::string("balance ") + text(v, "balanceKcal") + " != " + s.balance);
		expect(text(v, "status") == s.status, std::string("status ") + text(v, "status") + " != " + s.status);
		if (std::string(s.status) == "red") {
			expect(text(v, "excessKcal") == "250", "excess " + text(v, "excessKcal"));
			auto list = v.child("suggestions");
			expect(list && !list->children.empty(), "red verdict without exercises");
		}
		if (s.add)
			soap_call(client, "AddConsumption", item);
	}
	return finish(expect, "balances and statuses " + seen + "; excess 250 with exercises, over POST /soap");
}

Outcome check_digit_property()
{
	Expect expect;
	auto t0 = std::chrono::steady_clock::now();
	std::mt19937 rng(20261017);
	for (int i = 0; i < 1000; ++i) {
		auto body = random_digits(rng, 12);
		int accepted = 0, which = -1;
		for (int d = 0; d <= 9; ++d) {
			try {
				barcode::validate_code(body + char('0' + d));
				++accepted;
				which = d;
			} catch (const Error&) {
			}
		}
		expect(accepted == 1, body + " accepted " + std::to_string(accepted) + " digits");
		expect(which == barcode::compute_check_digit(body) && which == oracle::check_digit(body),
			   body + " check digit mismatch");
	}
	try {
		barcode::validate_code("4006381333931");
	} catch (const Error&) {
		expect(false, "4006381333931 rejected");
	}
	double secs = seconds_since(t0);
	expect(secs < 1.0, "took " + std::to_string(secs) + " s");
	return finish(expect, "1000 bodies, one digit each, " + std::to_string(secs) + " s");
}

Outcome symbology_round_trip()
{
	Expect expect;
	auto t0 = std::chrono::steady_clock::now();
	std::mt19937 rng(4242);
	for (int i = 0; i < 500; ++i) {
		auto body = random_digits(rng, 12);
		auto code = body + char('0' + oracle::check_digit(body));
		auto g = barcode::validate_code(code);
		auto runs = barcode::run_lengths(barcode::encode(g, barcode::Symbology::EAN13));
		for (int k = 1; k <= 4; ++k) {
			auto scaled = runs;
			for (auto& r : scaled.runs)
				r *= k;
			try {
				expect(barcode::decode_runs(scaled) == g, code + " decoded wrongly at scale " + std::to_string(k));
			} catch (const Error& e) {
				expect(false, code + " at scale " + std::to_string(k) + ": " + e.what());
			}
		}
	}

	int correct = 0, wrong = 0;
	std::mt19937 jrng(9001);
	std::uniform_int_distribution<int> jitter(-1, 1);
	for (int i = 0; i < 200; ++i) {
		auto body = random_digits(jrng, 12);
		auto code = body + char('0' + oracle::check_digit(body));
		barcode::Bits bits(10, 0);
		auto symbol = barcode::encode(barcode::validate_code(code), barcode::Symbology::EAN13);
		bits.insert(bits.end(), symbol.begin(), symbol.end());
		bits.insert(bits.end(), 10, 0);
		auto runs = barcode::run_lengths(bits);
		for (auto& r : runs.runs)
			r = r * 4 + jitter(jrng);
		try {
			(barcode::decode_runs(runs).digits13() == code ? correct : wrong)++;
		} catch (const Error&) {
		}
	}
	expect(correct >= 190, "jitter: only " + std::to_string(correct) + "/200 correct");
	expect(wrong == 0, "jitter: " + std::to_string(wrong) + " decoded to a different code");
	double secs = seconds_since(t0);
	expect(secs < 10.0, "took " + std::to_string(secs) + " s");
	return finish(expect, "500 codes x scales 1-4 exact; jitter " + std::to_string(correct) + "/200 correct, " +
							  std::to_string(wrong) + " wrong; " + std::to_string(secs) + " s");
}

Outcome upce()
{
	Expect expect;
	expect(barcode::expand_upce("04252614") == "042100005264", "expand 04252614");
	expect(barcode::compress_to_upce("042100005264") == "04252614", "compress 042100005264");

	std::mt19937 rng(77);
	int sampled = 0, canonical = 0;
	while (canonical < 20000) {
		auto body = std::string(1, "01"[sampled % 2]) + random_digits(rng, 6);
		// The check digit belongs to the expansion, so derive it from the oracle.
		auto code = body + oracle::upce_to_upca(body + "0").back();
		++sampled;
		auto a = barcode::expand_upce(code);
		expect(a == oracle::upce_to_upca(code), code + " expands differently from the oracle");
		if (!barcode::is_canonical_upce(code)) {
			// Another zero-suppressed form of the same UPC-A value is the canonical one.
			auto c = barcode::compress_to_upce(a);
			expect(c != code && barcode::expand_upce(c) == a, code + " non-canonical mapping");
			continue;
		}
		++canonical;
		expect(barcode::compress_to_upce(a) == code, code + " does not survive expand then compress");
	}
	return finish(expect, "04252614 <-> 042100005264; identity over " + std::to_string(canonical) +
							  " canonical codes (" + std::to_string(sampled) + " sampled)");
}

std::string random_value(std::mt19937& rng)
{
	static const std::vector<std::string> pieces = {"<",  ">",    "&",        "\"",           "'",
													"]]>", "&amp;", " ",        "\t",           "\n",
													"\r", "\x01", "\xc3\xa9", "\xe2\x82\xac", "\xf0\x9f\x8d\x8e"};
	std::uniform_int_distribution<int> len(0, 16);
	std::uniform_int_distribution<int> kind(0, 2);
	std::uniform_int_distribution<std::size_t> piece(0, pieces.size() - 1);
	std::uniform_int_distribution<int> ascii(0x20, 0x7e);
	std::string s;
	for (int n = len(rng); n > 0; --n)
		s += kind(rng) == 0 ? pieces[piece(rng)] : std::string(1, static_cast<char>(ascii(rng)));
	return s;
}

Outcome golden_files()
{
	Expect expect;
	expect(wire::render_request("GetProduct", {{"barcode", "4006381333931"}}) == golden("get_product_request.xml"),
		   "GetProduct request bytes");
	ServerFixture f(true);
	httplib::Client client("127.0.0.1", f.port);
	auto ok = client.Post("/soap", golden("get_product_request.xml"), "text/xml");
	expect(ok && ok->body == golden("get_product_response.xml"), "GetProduct response bytes");
	auto nf = client.Post("/soap", golden("product_not_found_request.xml"), "text/xml");
	expect(nf && nf->body == golden("product_not_found_fault.xml"), "ProductNotFound fault bytes");

	std::mt19937 rng(1017);
	std::uniform_int_distribution<int> coin(0, 1);
	const auto& ops = wire::protocol();
	std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
	int escaped = 0;
	for (int i = 0; i < 1000; ++i) {
		const auto& op = ops[pick(rng)];
		Fields fields;
		for (const auto& field : op.fields)
			if (field.required || coin(rng))
				fields[std::string(field.name)] = random_value(rng);
		auto bytes = wire::render_request(op.name, fields);
		escaped += bytes.find('&') != std::string::npos;
		auto parsed = wire::parse_envelope(bytes);
		auto* req = std::get_if<wire::Request>(&parsed);
		expect(req && req->op == op.name && req->fields == fields, "round trip " + std::to_string(i));
	}
	expect(escaped > 500, "too few envelopes needed escaping");
	return finish(expect, "3 golden files byte-exact; 1000 random envelopes round trip (" + std::to_string(escaped) +
							  " with escapes)");
}

nlohmann::json state_of(server::Service& s, const std::string& user)
{
	nlohmann::json j;
	j["profiles"] = wire::to_json(s.dispatch({"GetProfiles", {}}));
	j["log"] = wire::to_json(s.dispatch({"GetLog", {{"userId", user}, {"date", kDay}}}));
	auto products = s.catalog().all();
	std::sort(products.begin(), products.end(), [](const auto& a, const auto& b) { return a.gtin13 < b.gtin13; });
	for (const auto& p : products)
		j["catalog"].push_back(catalog::to_json(p));
	for (const auto& r : s.outbox().records())
		j["outbox"].push_back(server::to_json(r));
	return j;
}

Outcome outbox_and_restart()
{
	Expect expect;
	ServerFixture f(true);
	httplib::Client client("127.0.0.1", f.port);
	auto id = text(soap_call(client, "CreateProfile", kReferenceProfile), "userId");
	soap_call(client, "CreateProfile", kReferenceProfile);
	soap_call(client, "UpdateProfile", {{"userId", id}, {"weightKg", "62.5"}});

	std::mt19937 rng(7);
	const char* meals[] = {"breakfast", "lunch", "dinner"};
	auto products = f.service->catalog().all();
	std::uniform_int_distribution<std::size_t> which(0, products.size() - 1);
	std::uniform_int_distribution<int> grams(-20, 400);
	int successes = 0;
	for (int i = 0; i < 60; ++i) {
		const auto& product = products[which(rng)];
		// Some quantities are invalid and some codes unknown; those must not write a notification.
		std::string code = i % 10 == 9 ? "5901234123457" : product.gtin13;
		std::string meal = meals[i % 3];
		auto before = f.service->outbox().records().size();
		bool ok = true;
		try {
			soap_call(client, "AddConsumption",
					  {{"userId", id}, {"date", kDay}, {"barcode", code}, {"quantityG", std::to_string(grams(rng))},
					   {"meal", meal}});
		} catch (const Error&) {
			ok = false;
		}
		auto records = f.service->outbox().records();
		expect(records.size() == before + (ok ? 1 : 0), "consume " + std::to_string(i) + " wrote " +
															 std::to_string(records.size() - before) + " records");
		if (ok && records.size() == before + 1) {
			++successes;
			const auto& r = records.back();
			expect(r.subject.find(product.name) != std::string::npos && r.body.find(product.name) != std::string::npos,
				   "record misses product name " + product.name);
			expect(r.body.find(meal) != std::string::npos, "record misses meal " + meal);
		}
	}
	expect(successes > 20, "too few successful consumptions");

	auto before = state_of(*f.service, id);
	f.restart(true);
	auto after = state_of(*f.service, id);
	auto diff = nlohmann::json::diff(before, after);
	expect(diff.empty(), "state diff after restart: " + diff.dump());
	return finish(expect, std::to_string(successes) + " consumptions, one record each; restart diff empty");
}

Outcome fuzz()
{
	Expect expect;
	ServerFixture f(true);
	httplib::Client client("127.0.0.1", f.port);
	std::mt19937 rng(8);
	std::uniform_int_distribution<int> len(0, 2048);
	std::uniform_int_distribution<int> byte(0, 255);
	int faults = 0;
	for (int i = 0; i < 1000; ++i) {
		std::string body(len(rng), '\0');
		for (auto& c : body)
			c = static_cast<char>(byte(rng));
		auto res = client.Post("/soap", body, "text/xml");
		if (!res) {
			expect(false, "no answer to body " + std::to_string(i));
			continue;
		}
		try {
			bool fault = std::holds_alternative<wire::Fault>(wire::parse_response(res->body));
			faults += fault;
			expect(fault, "body " + std::to_string(i) + " answered without a Fault");
		} catch (const Error&) {
			expect(false, "body " + std::to_string(i) + " answered with an unparsable envelope");
		}
	}
	auto alive = client.Post("/soap", golden("get_product_request.xml"), "text/xml");
	expect(alive && alive->body == golden("get_product_response.xml"), "server not answering afterwards");
	return finish(expect, std::to_string(faults) + "/1000 Faults; server still answers");
}

} // namespace

int main()
{
	spdlog::set_level(spdlog::level::warn);
	const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
		{"reference requirement 2200 -> 2750", reference_requirement},
		{"reference day balances 1250/250/-250", reference_day},
		{"check digit property", check_digit_property},
		{"symbology round trip", symbology_round_trip},
		{"UPC-E expansion and compression", upce},
		{"protocol golden files and round trip", golden_files},
		{"outbox and restart durability", outbox_and_restart},
		{"fuzz resilience of the xml endpoint", fuzz},
	};
	int failed = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i) {
		Outcome o;
		try {
			o = criteria[i].second();
		} catch (const std::exception& e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		failed += !o.pass;
		std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": " << criteria[i].first << " -- "
				  << o.detail << std::endl;
	}
	std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
	return failed == 0 ? 0 : 1;
}
