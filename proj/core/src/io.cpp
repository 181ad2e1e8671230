#include "acmdm/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "acmdm/error.hpp"

namespace acmdm {

namespace {

using nlohmann::json;

json parse_document(std::string_view text, const char* what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string(what) + ": malformed JSON: " + e.what());
    }
}

double number_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number())
        throw Error(ErrorCode::Parse, where + ": missing or non-numeric \"" + key + "\"");
    return it->get<double>();
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class Fn>
auto with_context(const std::string& where, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        throw Error(ErrorCode::Parse, where + ": " + e.what());
    }
}

}  // namespace

FieldConfig parse_charges(std::string_view json_text) {
    const json doc = parse_document(json_text, "charges");
    if (!doc.is_object() || !doc.contains("charges") || !doc["charges"].is_array())
        throw Error(ErrorCode::Parse, "charges: expected an object with a \"charges\" array");

    std::vector<LineCharge> charges;
    std::size_t index = 0;
    for (const auto& item : doc["charges"]) {
        const std::string where = "charges[" + std::to_string(index++) + "]";
        if (!item.is_object()) throw Error(ErrorCode::Parse, where + ": expected an object");
        charges.push_back({{number_field(item, "x", where), number_field(item, "y", where)},
                           number_field(item, "lambda", where)});
    }
    return with_context("charges", [&] { return FieldConfig(std::move(charges)); });
}

PolylinePath parse_path(std::string_view json_text) {
    const json doc = parse_document(json_text, "path");
    if (!doc.is_object()) throw Error(ErrorCode::Parse, "path: expected an object");
    const auto closed = doc.find("closed");
    if (closed == doc.end() || !closed->is_boolean())
        throw Error(ErrorCode::Parse, "path: missing or non-boolean \"closed\"");
    const auto verts = doc.find("vertices");
    if (verts == doc.end() || !verts->is_array())
        throw Error(ErrorCode::Parse, "path: missing \"vertices\" array");

    std::vector<Vec2> vertices;
    std::size_t index = 0;
    for (const auto& v : *verts) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw Error(ErrorCode::Parse,
                        "path: vertices[" + std::to_string(index) + "] must be a [x, y] number pair");
        vertices.push_back({v[0].get<double>(), v[1].get<double>()});
        ++index;
    }
    const bool is_closed = closed->get<bool>();
    return with_context("path", [&] { return PolylinePath(std::move(vertices), is_closed); });
}

FieldConfig load_charges(const std::filesystem::path& file) {
    return with_context(file.string(), [&] { return parse_charges(read_file(file)); });
}

PolylinePath load_path(const std::filesystem::path& file) {
    return with_context(file.string(), [&] { return parse_path(read_file(file)); });
}

}  // namespace acmdm
