#pragma once

// JSON reading helpers shared by the circuit, graph, schedule and matrix file
// formats. Errors are reported as ParseError with a line/column, including
// semantic errors on array elements (e.g. a gate with an out-of-range qubit).

#include "qmap/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qmap::detail {

using json = nlohmann::json;

struct TextPosition {
    std::size_t line = 1;
    std::size_t column = 1;
};

inline TextPosition position_of(std::string_view text, std::size_t offset) {
    TextPosition pos;
    offset = std::min(offset, text.size());
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

namespace sax {

// Input iterator that publishes how far the parser has read.
struct CountingIterator {
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    const char* pos = nullptr;
    const char** cursor = nullptr;

    reference operator*() const { return *pos; }
    CountingIterator& operator++() {
        ++pos;
        *cursor = pos;
        return *this;
    }
    CountingIterator operator++(int) {
        CountingIterator old = *this;
        ++*this;
        return old;
    }
    bool operator==(const CountingIterator& other) const { return pos == other.pos; }
    bool operator!=(const CountingIterator& other) const { return pos != other.pos; }
};

// Records the byte offset of every element of every array that is a direct
// member of the root object.
class ElementRecorder {
public:
    ElementRecorder(const char* base, const char** cursor) : base_(base), cursor_(cursor) {}

    bool null() { return scalar(); }
    bool boolean(bool) { return scalar(); }
    bool number_integer(json::number_integer_t) { return scalar(); }
    bool number_unsigned(json::number_unsigned_t) { return scalar(); }
    bool number_float(json::number_float_t, const json::string_t&) { return scalar(); }
    bool string(json::string_t&) { return scalar(); }
    bool binary(json::binary_t&) { return scalar(); }

    bool start_object(std::size_t) {
        note_element();
        ++depth_;
        return true;
    }
    bool end_object() {
        --depth_;
        return true;
    }
    bool start_array(std::size_t) {
        note_element();
        if (depth_ == 1) {
            array_key_ = key_;
        }
        ++depth_;
        return true;
    }
    bool end_array() {
        --depth_;
        if (depth_ == 1) {
            array_key_.clear();
        }
        return true;
    }
    bool key(json::string_t& k) {
        if (depth_ == 1) {
            key_ = k;
        }
        return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) {
        return false;
    }

    std::map<std::string, std::vector<std::size_t>, std::less<>> offsets;

private:
    bool scalar() {
        note_element();
        return true;
    }
    void note_element() {
        if (depth_ == 2 && !array_key_.empty()) {
            std::size_t consumed = static_cast<std::size_t>(*cursor_ - base_);
            offsets[array_key_].push_back(consumed == 0 ? 0 : consumed - 1);
        }
    }

    const char* base_;
    const char** cursor_;
    int depth_ = 0;
    std::string key_;
    std::string array_key_;
};

}  // namespace sax

/// A parsed JSON document that remembers where the elements of its top-level
/// arrays start, so validation errors can point at the right line.
class JsonDocument {
public:
    JsonDocument(std::string_view text, std::string_view what) : text_(text), what_(what) {
        try {
            root_ = json::parse(text.begin(), text.end());
        } catch (const json::parse_error& e) {
            auto pos = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
            throw ParseError(std::string(what) + ": malformed syntax", pos.line, pos.column);
        }
        const char* cursor = text.data();
        sax::ElementRecorder recorder(text.data(), &cursor);
        sax::CountingIterator first{text.data(), &cursor};
        sax::CountingIterator last{text.data() + text.size(), &cursor};
        json::sax_parse(first, last, &recorder);
        offsets_ = std::move(recorder.offsets);
        if (!root_.is_object()) {
            fail("top-level value must be an object", TextPosition{});
        }
    }

    [[nodiscard]] const json& root() const { return root_; }

    [[nodiscard]] TextPosition element_position(std::string_view array_key, std::size_t index) const {
        auto it = offsets_.find(array_key);
        if (it == offsets_.end() || index >= it->second.size()) {
            return TextPosition{};
        }
        return position_of(text_, it->second[index]);
    }

    [[noreturn]] void fail(const std::string& message, TextPosition at) const {
        throw ParseError(std::string(what_) + ": " + message, at.line, at.column);
    }

    void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                             TextPosition at) const {
        for (const auto& [key, value] : object.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail("unknown field \"" + key + "\"", at);
            }
        }
    }

    [[nodiscard]] const json& require(const json& object, const char* key, TextPosition at) const {
        auto it = object.find(key);
        if (it == object.end()) {
            fail(std::string("missing field \"") + key + "\"", at);
        }
        return *it;
    }

    [[nodiscard]] std::int64_t integer(const json& value, const char* name, TextPosition at) const {
        if (!value.is_number_integer()) {
            fail(std::string("field \"") + name + "\" must be an integer", at);
        }
        return value.get<std::int64_t>();
    }

    [[nodiscard]] const json& array(const json& object, const char* key, TextPosition at) const {
        const json& value = require(object, key, at);
        if (!value.is_array()) {
            fail(std::string("field \"") + key + "\" must be an array", at);
        }
        return value;
    }

    /// Reads a two-element integer array such as a gate's qubits or an edge.
    [[nodiscard]] std::pair<std::int64_t, std::int64_t> integer_pair(const json& value, const char* name,
                                                                      TextPosition at) const {
        if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
            !value[1].is_number_integer()) {
            fail(std::string("\"") + name + "\" must be a pair of integers", at);
        }
        return {value[0].get<std::int64_t>(), value[1].get<std::int64_t>()};
    }

private:
    std::string_view text_;
    std::string what_;
    json root_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> offsets_;
};

}  // namespace qmap::detail
