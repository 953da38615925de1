/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/wire.h"

#include <cstdint>

namespace healthwise::wire {

namespace {

constexpr int MAX_DEPTH = 64;

[[noreturn]] void malformed(const std::string& what)
{
	throw Error(ErrorCode::MalformedXml, what);
}

bool valid_utf8(std::string_view s)
{
	std::size_t i = 0;
	while (i < s.size()) {
		auto c = static_cast<unsigned char>(s[i]);
		int extra = 0;
		std::uint32_t cp = 0;
		if (c < 0x80) {
			++i;
			continue;
		} else if ((c & 0xE0) == 0xC0) {
			extra = 1;
			cp = c & 0x1F;
		} else if ((c & 0xF0) == 0xE0) {
			extra = 2;
			cp = c & 0x0F;
		} else if ((c & 0xF8) == 0xF0) {
			extra = 3;
			cp = c & 0x07;
		} else {
			return false;
		}
		if (i + extra >= s.size())
			return false;
		for (int k = 1; k <= extra; ++k) {
			auto cc = static_cast<unsigned char>(s[i + k]);
			if ((cc & 0xC0) != 0x80)
				return false;
			cp = (cp << 6) | (cc & 0x3F);
		}
		static constexpr std::uint32_t MIN_FOR_LENGTH[] = {0, 0x80, 0x800, 0x10000};
		if (cp < MIN_FOR_LENGTH[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
			return false;
		i += extra + 1;
	}
	return true;
}

void append_utf8(std::string& out, std::uint32_t cp)
{
	if (cp < 0x80) {
		out.push_back(static_cast<char>(cp));
	} else if (cp < 0x800) {
		out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
		out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
	} else if (cp < 0x10000) {
		out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
		out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
		out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
	} else {
		out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
		out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
		out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
		out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
	}
}

bool is_space(char c)
{
	return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool is_name_char(char c)
{
	auto u = static_cast<unsigned char>(c);
	return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-'
		   || c == '.' || c == ':' || u >= 0x80;
}

class Parser
{
public:
	explicit Parser(std::string_view in) : _in(in) {}

	Node document()
	{
		if (_in.substr(0, 3) == "\xEF\xBB\xBF")
			_pos = 3;
		misc();
		if (!peek("<") || peek("</"))
			malformed("expected a root element");
		Node root = element(0);
		misc();
		if (_pos != _in.size())
			malformed("content after the root element");
		return root;
	}

private:
	bool peek(std::string_view s) const { return _in.substr(_pos, s.size()) == s; }

	void expect(std::string_view s)
	{
		if (!peek(s))
			malformed("expected '" + std::string(s) + "' at offset " + std::to_string(_pos));
		_pos += s.size();
	}

	void skip_space()
	{
		while (_pos < _in.size() && is_space(_in[_pos]))
			++_pos;
	}

	void skip_past(std::string_view terminator)
	{
		auto end = _in.find(terminator, _pos);
		if (end == std::string_view::npos)
			malformed("unterminated markup, missing '" + std::string(terminator) + "'");
		_pos = end + terminator.size();
	}

	// Whitespace, comments and processing instructions between top-level items.
	void misc()
	{
		for (;;) {
			skip_space();
			if (peek("<!--"))
				skip_past("-->");
			else if (peek("<?"))
				skip_past("?>");
			else if (peek("<!"))
				malformed("DOCTYPE and other declarations are not supported");
			else
				return;
		}
	}

	std::string name()
	{
		auto begin = _pos;
		while (_pos < _in.size() && is_name_char(_in[_pos]))
			++_pos;
		if (_pos == begin)
			malformed("expected a name at offset " + std::to_string(begin));
		return std::string(_in.substr(begin, _pos - begin));
	}

	void reference(std::string& out)
	{
		expect("&");
		auto end = _in.find(';', _pos);
		if (end == std::string_view::npos || end - _pos > 10)
			malformed("unterminated entity reference");
		auto ref = _in.substr(_pos, end - _pos);
		_pos = end + 1;

		if (ref == "amp")
			out.push_back('&');
		else if (ref == "lt")
			out.push_back('<');
		else if (ref == "gt")
			out.push_back('>');
		else if (ref == "quot")
			out.push_back('"');
		else if (ref == "apos")
			out.push_back('\'');
		else if (ref.size() > 1 && ref[0] == '#') {
			bool hex = ref[1] == 'x';
			auto digits = ref.substr(hex ? 2 : 1);
			if (digits.empty())
				malformed("empty character reference");
			std::uint32_t cp = 0;
			for (char c : digits) {
				int v;
				if (c >= '0' && c <= '9')
					v = c - '0';
				else if (hex && c >= 'a' && c <= 'f')
					v = c - 'a' + 10;
				else if (hex && c >= 'A' && c <= 'F')
					v = c - 'A' + 10;
				else
					malformed("bad character reference");
				cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
				if (cp > 0x10FFFF)
					malformed("character reference out of range");
			}
			if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF))
				malformed("character reference out of range");
			append_utf8(out, cp);
		} else {
			malformed("unknown entity '&" + std::string(ref) + ";'");
		}
	}

	void attributes()
	{
		for (;;) {
			bool spaced = _pos < _in.size() && is_space(_in[_pos]);
			skip_space();
			if (peek("/>") || peek(">"))
				return;
			if (!spaced)
				malformed("attributes must be separated by whitespace");
			name();
			skip_space();
			expect("=");
			skip_space();
			if (_pos >= _in.size() || (_in[_pos] != '"' && _in[_pos] != '\''))
				malformed("attribute value must be quoted");
			char quote = _in[_pos++];
			std::string ignored;
			while (_pos < _in.size() && _in[_pos] != quote) {
				if (_in[_pos] == '<')
					malformed("'<' in attribute value");
				if (_in[_pos] == '&')
					reference(ignored);
				else
					++_pos;
			}
			expect(std::string_view(&quote, 1));
		}
	}

	static std::string local_name(const std::string& qualified)
	{
		auto colon = qualified.rfind(':');
		return colon == std::string::npos ? qualified : qualified.substr(colon + 1);
	}

	Node element(int depth)
	{
		if (depth >= MAX_DEPTH)
			malformed("elements nested too deeply");
		expect("<");
		auto qualified = name();
		Node node(local_name(qualified));
		attributes();
		if (peek("/>")) {
			_pos += 2;
			return node;
		}
		expect(">");

		std::string text;
		for (;;) {
			if (_pos >= _in.size())
				malformed("unexpected end of document inside <" + qualified + ">");
			char c = _in[_pos];
			if (c == '<') {
				if (peek("</")) {
					_pos += 2;
					if (name() != qualified)
						malformed("mismatched end tag for <" + qualified + ">");
					skip_space();
					expect(">");
					break;
				} else if (peek("<!--")) {
					skip_past("-->");
				} else if (peek("<![CDATA[")) {
					_pos += 9;
					auto end = _in.find("]]>", _pos);
					if (end == std::string_view::npos)
						malformed("unterminated CDATA section");
					text.append(_in.substr(_pos, end - _pos));
					_pos = end + 3;
				} else if (peek("<?")) {
					skip_past("?>");
				} else if (peek("<!")) {
					malformed("declarations are not allowed inside elements");
				} else {
					node.children.push_back(element(depth + 1));
				}
			} else if (c == '&') {
				reference(text);
			} else if (c == '\r') {
				text.push_back('\n');
				++_pos;
				if (peek("\n"))
					++_pos;
			} else {
				text.push_back(c);
				++_pos;
			}
		}

		bool blank = text.find_first_not_of(" \t\n") == std::string::npos;
		if (!(node.children.size() > 0 && blank))
			node.text = std::move(text);
		return node;
	}

	std::string_view _in;
	std::size_t _pos = 0;
};

} // namespace

const Node* Node::child(std::string_view child_name) const
{
	for (const auto& c : children)
		if (c.name == child_name)
			return &c;
	return nullptr;
}

Node parse_xml(std::string_view bytes)
{
	if (!valid_utf8(bytes))
		malformed("document is not valid UTF-8");
	for (char c : bytes) {
		auto u = static_cast<unsigned char>(c);
		if (u < 0x20 && c != '\t' && c != '\n' && c != '\r')
			malformed("control character in document");
	}
	return Parser(bytes).document();
}

std::string escape(std::string_view text)
{
	std::string out;
	out.reserve(text.size());
	for (char c : text) {
		switch (c) {
		case '&': out += "&amp;"; break;
		case '<': out += "&lt;"; break;
		case '>': out += "&gt;"; break;
		case '\r': out += "&#13;"; break;
		default:
			if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n') {
				out += "&#" + std::to_string(static_cast<int>(c)) + ";";
			} else {
				out.push_back(c);
			}
		}
	}
	return out;
}

} // namespace healthwise::wire
