#include "json_support.hpp"

#include <set>

namespace iotassure::detail {
namespace {

constexpr std::size_t kMaxDepth = 256;

class StrictSax final : public nlohmann::json_sax<json> {
public:
    explicit StrictSax(StrictJson& out) : out_(out) {}

    bool null() override { return add(json(nullptr)); }
    bool boolean(bool v) override { return add(json(v)); }
    bool number_integer(number_integer_t v) override { return add(json(v)); }
    bool number_unsigned(number_unsigned_t v) override { return add(json(v)); }
    bool number_float(number_float_t v, const string_t&) override { return add(json(v)); }
    bool string(string_t& v) override { return add(json(std::move(v))); }
    bool binary(binary_t& v) override { return add(json::binary(std::move(v))); }

    bool start_object(std::size_t) override { return open(json::object()); }
    bool start_array(std::size_t) override { return open(json::array()); }
    bool end_object() override { return close(); }
    bool end_array() override { return close(); }

    bool key(string_t& k) override {
        auto& seen = frames_.back().keys;
        if (!seen.insert(k).second) {
            out_.duplicate_keys.emplace_back(frames_.back().pointer, k);
        }
        pending_key_ = k;
        return true;
    }

    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        error_position_ = position;
        out_.error = ex.what();
        return false;
    }

    std::size_t error_position() const { return error_position_; }
    bool too_deep() const { return too_deep_; }

private:
    struct Frame {
        json* node;
        std::string pointer;
        std::set<std::string> keys;
    };

    std::pair<json*, std::string> slot() {
        if (frames_.empty()) {
            return {&out_.value, ""};
        }
        Frame& top = frames_.back();
        if (top.node->is_array()) {
            const std::size_t index = top.node->size();
            top.node->push_back(nullptr);
            return {&top.node->back(), pointer_append(top.pointer, index)};
        }
        return {&(*top.node)[pending_key_], pointer_append(top.pointer, pending_key_)};
    }

    bool add(json v) {
        *slot().first = std::move(v);
        return true;
    }

    bool open(json container) {
        if (frames_.size() >= kMaxDepth) {
            too_deep_ = true;
            out_.error = "document nesting exceeds " + std::to_string(kMaxDepth) + " levels";
            return false;
        }
        auto [node, pointer] = slot();
        *node = std::move(container);
        frames_.push_back(Frame{node, std::move(pointer), {}});
        return true;
    }

    bool close() {
        frames_.pop_back();
        return true;
    }

    StrictJson& out_;
    std::vector<Frame> frames_;
    std::string pending_key_;
    std::size_t error_position_ = 0;
    bool too_deep_ = false;
};

std::string line_col(std::string_view text, std::size_t position) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min(position, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

} // namespace

StrictJson parse_json_strict(std::string_view text) {
    StrictJson out;
    StrictSax sax(out);
    bool ok = false;
    try {
        ok = json::sax_parse(text.begin(), text.end(), &sax);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    if (!ok) {
        if (!out.error) {
            out.error = "malformed document";
        }
        out.error_location = line_col(text, sax.error_position());
        out.value = nullptr;
        out.duplicate_keys.clear();
    }
    return out;
}

json parse_json_or_throw(std::string_view text, std::string_view what) {
    StrictJson parsed = parse_json_strict(text);
    if (parsed.error) {
        throw FormatError(std::string(what) + ": " + *parsed.error + " at " +
                          parsed.error_location);
    }
    if (!parsed.value.is_object()) {
        throw FormatError(std::string(what) + ": top level must be an object");
    }
    return std::move(parsed.value);
}

std::string dump_canonical(const json& j) {
    return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::string pointer_append(std::string_view base, std::string_view token) {
    std::string out(base);
    out += '/';
    for (char c : token) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

std::string pointer_append(std::string_view base, std::size_t index) {
    return std::string(base) + "/" + std::to_string(index);
}

json value_to_json(const ParameterValue& v) {
    struct Visitor {
        json operator()(bool b) const { return b; }
        json operator()(const std::string& s) const { return s; }
        json operator()(const StringList& l) const { return l; }
        json operator()(const Quantity& q) const {
            return json{{"unit", q.unit}, {"value", q.value}};
        }
    };
    return std::visit(Visitor{}, v);
}

std::optional<ParameterValue> value_from_json(const json& j, const ParameterDef& def,
                                              std::string& why) {
    switch (def.shape) {
    case ValueShape::Boolean:
        if (j.is_boolean()) {
            return ParameterValue{j.get<bool>()};
        }
        why = "expected a boolean";
        return std::nullopt;
    case ValueShape::String:
        if (j.is_string()) {
            return ParameterValue{j.get<std::string>()};
        }
        why = "expected a string";
        return std::nullopt;
    case ValueShape::StringList: {
        if (!j.is_array()) {
            why = "expected a list of strings";
            return std::nullopt;
        }
        StringList out;
        for (const auto& e : j) {
            if (!e.is_string()) {
                why = "expected a list of strings";
                return std::nullopt;
            }
            out.push_back(e.get<std::string>());
        }
        return ParameterValue{std::move(out)};
    }
    case ValueShape::Quantity:
        if (j.is_number()) {
            return ParameterValue{Quantity{j.get<double>(), def.unit}};
        }
        if (j.is_object() && j.contains("value") && j["value"].is_number()) {
            Quantity q{j["value"].get<double>(), def.unit};
            if (j.contains("unit")) {
                if (!j["unit"].is_string()) {
                    why = "unit must be a string";
                    return std::nullopt;
                }
                q.unit = j["unit"].get<std::string>();
            }
            if (j.size() > (j.contains("unit") ? 2U : 1U)) {
                why = "quantity accepts only 'value' and 'unit'";
                return std::nullopt;
            }
            return ParameterValue{std::move(q)};
        }
        why = "expected a number or {\"value\": number, \"unit\": string}";
        return std::nullopt;
    }
    why = "unsupported value shape";
    return std::nullopt;
}

ParameterValue value_from_json_untyped(const json& j) {
    if (j.is_boolean()) {
        return j.get<bool>();
    }
    if (j.is_string()) {
        return j.get<std::string>();
    }
    if (j.is_array()) {
        StringList out;
        for (const auto& e : j) {
            if (!e.is_string()) {
                throw FormatError("list values must contain strings");
            }
            out.push_back(e.get<std::string>());
        }
        return out;
    }
    if (j.is_object() && j.contains("value") && j["value"].is_number() && j.contains("unit") &&
        j["unit"].is_string()) {
        return Quantity{j["value"].get<double>(), j["unit"].get<std::string>()};
    }
    throw FormatError("unrecognised parameter value");
}

const json& member(const json& obj, std::string_view key) {
    if (!obj.is_object()) {
        throw FormatError("expected an object holding '" + std::string(key) + "'");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError("missing field '" + std::string(key) + "'");
    }
    return *it;
}

std::string get_string(const json& obj, std::string_view key) {
    const json& v = member(obj, key);
    if (!v.is_string()) {
        throw FormatError("field '" + std::string(key) + "' must be a string");
    }
    return v.get<std::string>();
}

double get_number(const json& obj, std::string_view key) {
    const json& v = member(obj, key);
    if (!v.is_number()) {
        throw FormatError("field '" + std::string(key) + "' must be a number");
    }
    return v.get<double>();
}

bool get_bool(const json& obj, std::string_view key) {
    const json& v = member(obj, key);
    if (!v.is_boolean()) {
        throw FormatError("field '" + std::string(key) + "' must be a boolean");
    }
    return v.get<bool>();
}

std::vector<std::string> get_string_list(const json& obj, std::string_view key) {
    const json& v = get_array(obj, key);
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_string()) {
            throw FormatError("field '" + std::string(key) + "' must hold strings");
        }
        out.push_back(e.get<std::string>());
    }
    return out;
}

const json& get_array(const json& obj, std::string_view key) {
    const json& v = member(obj, key);
    if (!v.is_array()) {
        throw FormatError("field '" + std::string(key) + "' must be a list");
    }
    return v;
}

json string_list(const std::vector<std::string>& v) {
    json out = json::array();
    for (const auto& s : v) {
        out.push_back(s);
    }
    return out;
}

} // namespace iotassure::detail
