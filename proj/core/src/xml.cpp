#include "xml.hpp"

#include <cctype>

#include "graphmean/errors.hpp"

namespace graphmean::detail {

namespace {

class Parser {
public:
    explicit Parser(std::string_view input) : in_(input) {}

    XmlNode parse_document() {
        skip_misc();
        if (eof()) fail("expected a root element");
        XmlNode root = parse_element();
        skip_misc();
        if (!eof()) fail("content after the root element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("XML: " + message,
                         "line " + std::to_string(line_) + ", column " + std::to_string(col_));
    }

    bool eof() const { return pos_ >= in_.size(); }

    char peek() const { return in_[pos_]; }

    char get() {
        const char c = in_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    bool consume(std::string_view token) {
        if (in_.substr(pos_).starts_with(token)) {
            for (std::size_t i = 0; i < token.size(); ++i) get();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!consume(token)) fail("expected '" + std::string(token) + "'");
    }

    void skip_space() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
    }

    // whitespace, comments, processing instructions, doctype
    void skip_misc() {
        for (;;) {
            skip_space();
            if (consume("<!--")) {
                while (!eof() && !consume("-->")) get();
            } else if (consume("<?")) {
                while (!eof() && !consume("?>")) get();
            } else if (consume("<!DOCTYPE")) {
                int depth = 1;
                while (!eof() && depth > 0) {
                    const char c = get();
                    if (c == '<') ++depth;
                    if (c == '>') --depth;
                }
            } else {
                return;
            }
        }
    }

    std::string parse_name() {
        std::string name;
        while (!eof()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
                c == '.')
                name += get();
            else
                break;
        }
        if (name.empty()) fail("expected a name");
        return name;
    }

    std::string decode_entity() {
        // called after '&'
        std::string entity;
        while (!eof() && peek() != ';') entity += get();
        if (eof()) fail("unterminated entity reference");
        get(); // ';'
        if (entity == "amp") return "&";
        if (entity == "lt") return "<";
        if (entity == "gt") return ">";
        if (entity == "quot") return "\"";
        if (entity == "apos") return "'";
        if (!entity.empty() && entity[0] == '#') {
            const bool hex = entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X');
            long code = 0;
            try {
                code = std::stol(entity.substr(hex ? 2 : 1), nullptr, hex ? 16 : 10);
            } catch (const std::exception&) {
                fail("bad character reference '&" + entity + ";'");
            }
            if (code < 1 || code > 127) fail("unsupported character reference");
            return std::string(1, static_cast<char>(code));
        }
        fail("unknown entity '&" + entity + ";'");
    }

    std::string parse_attribute_value() {
        const char quote = peek();
        if (quote != '"' && quote != '\'') fail("expected a quoted attribute value");
        get();
        std::string value;
        while (!eof() && peek() != quote) {
            if (peek() == '&') {
                get();
                value += decode_entity();
            } else {
                value += get();
            }
        }
        if (eof()) fail("unterminated attribute value");
        get();
        return value;
    }

    XmlNode parse_element() {
        expect("<");
        XmlNode node;
        node.name = parse_name();
        for (;;) {
            skip_space();
            if (eof()) fail("unterminated element '" + node.name + "'");
            if (consume("/>")) return node;
            if (consume(">")) break;
            std::string key = parse_name();
            skip_space();
            expect("=");
            skip_space();
            node.attributes.emplace_back(std::move(key), parse_attribute_value());
        }
        // content
        for (;;) {
            if (eof()) fail("unterminated element '" + node.name + "'");
            if (consume("<!--")) {
                while (!eof() && !consume("-->")) get();
                continue;
            }
            if (in_.substr(pos_).starts_with("</")) {
                expect("</");
                const std::string closing = parse_name();
                if (closing != node.name)
                    fail("mismatched closing tag '" + closing + "' for '" + node.name + "'");
                skip_space();
                expect(">");
                return node;
            }
            if (peek() == '<') {
                node.children.push_back(parse_element());
                continue;
            }
            if (peek() == '&') {
                get();
                node.text += decode_entity();
                continue;
            }
            node.text += get();
        }
    }

    std::string_view in_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace

XmlNode xml_parse(std::string_view input) { return Parser(input).parse_document(); }

} // namespace graphmean::detail
