/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "healthwise/error.h"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace healthwise::wire {

/**
 * SOAP-style envelope codec.
 *
 *   <?xml version="1.0" encoding="UTF-8"?>
 *   <Envelope><Body><GetProduct><barcode>4006381333931</barcode></GetProduct></Body></Envelope>
 *
 * Rendered without namespaces or a Header; the parser tolerates both. Every
 * value travels as element text; typing happens at the endpoints. Errors travel as <Fault><code/><message/></Fault>
 * inside Body.
 */

/// An XML element reduced to what the protocol uses: name, text, child elements.
struct Node
{
	std::string name;
	std::string text;
	std::vector<Node> children;

	Node() = default;
	Node(std::string name_, std::string text_ = {}, std::vector<Node> children_ = {})
		: name(std::move(name_)), text(std::move(text_)), children(std::move(children_))
	{}

	const Node* child(std::string_view child_name) const;
	bool operator==(const Node&) const = default;
};

using Fields = std::map<std::string, std::string, std::less<>>;

struct Request
{
	std::string op;
	Fields fields;

	bool operator==(const Request&) const = default;
};

struct Fault
{
	ErrorCode code = ErrorCode::InternalError;
	std::string message;

	bool operator==(const Fault&) const = default;
};

struct FieldSpec
{
	std::string_view name;
	bool required;
};

struct OperationSpec
{
	std::string_view name;
	std::vector<FieldSpec> fields; // wire order
};

const std::vector<OperationSpec>& protocol();
const OperationSpec* find_operation(std::string_view name);
std::string response_name(std::string_view op);

// Low-level XML. parse_xml accepts one root element with optional prolog and comments,
// CDATA, the predefined entities and numeric character references. Namespace prefixes are
// dropped from element names. Throws MalformedXml.
Node parse_xml(std::string_view bytes);
std::string escape(std::string_view text);

std::string render_request(std::string_view op, const Fields& fields);
std::string render_response(const Node& response);
std::string render_fault(const Fault& fault);

// A request envelope, or the Fault it carries. Throws MalformedXml, UnknownOperation, MissingField.
std::variant<Request, Fault> parse_envelope(std::string_view bytes);

// The single element inside Body of a response envelope, or its Fault. Throws MalformedXml.
std::variant<Node, Fault> parse_response(std::string_view bytes);

// --- JSON facade -----------------------------------------------------------

enum class ValueKind
{
	Text,
	Integer,
	Number,
};

ValueKind value_kind(std::string_view field);

// Container elements whose children are list items, e.g. suggestions -> suggestion.
std::optional<std::string_view> list_item_name(std::string_view container);

// Shortest decimal that round-trips; integral values print without a fraction.
std::string format_number(double value);

// A response element as the facade object: leaves typed by field name, list containers as arrays.
nlohmann::json to_json(const Node& response);

// Inverse of to_json, given the element name.
Node from_json(std::string name, const nlohmann::json& object);

// Flattens a facade request body into wire fields. ValidationError on nested values.
Fields fields_from_json(const nlohmann::json& object);

nlohmann::json fault_json(const Fault& fault);

} // namespace healthwise::wire
