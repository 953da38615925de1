/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/wire.h"

namespace healthwise::wire {

namespace {

constexpr std::string_view DECLARATION = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

[[noreturn]] void malformed(const std::string& what)
{
	throw Error(ErrorCode::MalformedXml, what);
}

void write(std::string& out, const Node& node)
{
	out += '<';
	out += node.name;
	out += '>';
	if (node.children.empty())
		out += escape(node.text);
	for (const auto& c : node.children)
		write(out, c);
	out += "</";
	out += node.name;
	out += '>';
}

std::string wrap(const Node& payload)
{
	std::string out(DECLARATION);
	out += "<Envelope><Body>";
	write(out, payload);
	out += "</Body></Envelope>";
	return out;
}

// The one element inside <Envelope><Body>.
Node body_payload(std::string_view bytes)
{
	Node root = parse_xml(bytes);
	if (root.name != "Envelope")
		malformed("root element must be Envelope, found " + root.name);

	const Node* body = nullptr;
	for (const auto& c : root.children) {
		if (c.name == "Body") {
			if (body)
				malformed("Envelope holds more than one Body");
			body = &c;
		} else if (c.name != "Header") {
			malformed("unexpected element <" + c.name + "> in Envelope");
		}
	}
	if (!body)
		malformed("Envelope has no Body");
	if (body->children.size() != 1)
		malformed("Body must hold exactly one element");
	return body->children.front();
}

Fault fault_from(const Node& node)
{
	Fault f;
	const Node* code = node.child("code");
	const Node* message = node.child("message");
	if (!code)
		malformed("Fault without code");
	f.code = parse_error_code(code->text).value_or(ErrorCode::InternalError);
	if (message)
		f.message = message->text;
	return f;
}

} // namespace

const std::vector<OperationSpec>& protocol()
{
	static const std::vector<OperationSpec> ops = {
		{"GetProduct", {{"barcode", true}}},
		{"CheckEnergy",
		 {{"userId", true},
		  {"date", true},
		  {"barcode", false},
		  {"quantityG", false},
		  {"meal", true},
		  {"candidateKcal", false}}},
		{"AddConsumption",
		 {{"userId", true}, {"date", true}, {"barcode", true}, {"quantityG", true}, {"meal", true}}},
		{"GetExercises", {{"excessKcal", true}}},
		{"CreateProfile",
		 {{"name", true},
		  {"gender", true},
		  {"age", true},
		  {"heightCm", true},
		  {"weightKg", true},
		  {"activity", true},
		  {"email", true}}},
		{"UpdateProfile",
		 {{"userId", true},
		  {"name", false},
		  {"gender", false},
		  {"age", false},
		  {"heightCm", false},
		  {"weightKg", false},
		  {"activity", false},
		  {"email", false}}},
		{"DeleteProfile", {{"userId", true}}},
		{"GetProfiles", {}},
		{"GetLog", {{"userId", true}, {"date", true}}},
	};
	return ops;
}

const OperationSpec* find_operation(std::string_view name)
{
	for (const auto& op : protocol())
		if (op.name == name)
			return &op;
	return nullptr;
}

std::string response_name(std::string_view op)
{
	return std::string(op) + "Response";
}

std::string render_request(std::string_view op, const Fields& fields)
{
	const auto* spec = find_operation(op);
	if (!spec)
		throw Error(ErrorCode::UnknownOperation, "unknown operation '" + std::string(op) + "'");

	for (const auto& [key, value] : fields) {
		bool known = false;
		for (const auto& f : spec->fields)
			known = known || f.name == key;
		if (!known)
			throw Error(ErrorCode::ValidationError, std::string(op) + " has no field '" + key + "'");
	}

	Node payload{std::string(op)};
	for (const auto& f : spec->fields) {
		auto it = fields.find(f.name);
		if (it == fields.end()) {
			if (f.required)
				throw Error(ErrorCode::MissingField, std::string(op) + " requires field '" + std::string(f.name) + "'");
			continue;
		}
		payload.children.emplace_back(std::string(f.name), it->second);
	}
	return wrap(payload);
}

std::string render_response(const Node& response)
{
	return wrap(response);
}

std::string render_fault(const Fault& fault)
{
	return wrap(Node("Fault", {}, {Node("code", std::string(to_string(fault.code))), Node("message", fault.message)}));
}

std::variant<Request, Fault> parse_envelope(std::string_view bytes)
{
	Node payload = body_payload(bytes);
	if (payload.name == "Fault")
		return fault_from(payload);

	const auto* spec = find_operation(payload.name);
	if (!spec)
		throw Error(ErrorCode::UnknownOperation, "unknown operation '" + payload.name + "'");

	Request request{payload.name, {}};
	for (const auto& f : spec->fields) {
		if (const Node* value = payload.child(f.name))
			request.fields.emplace(std::string(f.name), value->text);
		else if (f.required)
			throw Error(ErrorCode::MissingField, payload.name + " requires field '" + std::string(f.name) + "'");
	}
	return request;
}

std::variant<Node, Fault> parse_response(std::string_view bytes)
{
	Node payload = body_payload(bytes);
	if (payload.name == "Fault")
		return fault_from(payload);
	return payload;
}

} // namespace healthwise::wire
