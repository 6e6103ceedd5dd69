#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphmean::detail {

// Minimal strict XML subset sufficient for GXL and CXL files: prolog,
// doctype and comments are skipped; elements, attributes, character data and
// the five predefined entities plus numeric references are understood.
// Errors report line and column.
struct XmlNode {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlNode> children;
    std::string text; // concatenated character data of this element

    const std::string* attribute(std::string_view key) const {
        for (const auto& [k, v] : attributes)
            if (k == key) return &v;
        return nullptr;
    }

    const XmlNode* first_child(std::string_view name_) const {
        for (const XmlNode& c : children)
            if (c.name == name_) return &c;
        return nullptr;
    }
};

XmlNode xml_parse(std::string_view input);

} // namespace graphmean::detail
