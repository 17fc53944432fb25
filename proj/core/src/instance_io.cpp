#include "linzip/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace linzip {

namespace {

using nlohmann::ordered_json;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

// One CSV record; double quotes protect commas, "" is a literal quote.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = was_quoted = true;
        } else if (ch == ',') {
            out.push_back(was_quoted ? cur : trim(cur));
            cur.clear();
            was_quoted = false;
        } else {
            cur += ch;
        }
    }
    if (quoted) throw ParseError("line " + std::to_string(line_no) + ": unterminated quote");
    out.push_back(was_quoted ? cur : trim(cur));
    return out;
}

std::string expect_string(const ordered_json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError(where + ": expected a string");
    return v.get<std::string>();
}

std::vector<std::string> string_list(const ordered_json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array of strings");
    std::vector<std::string> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(expect_string(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

SetSystem parse_instance_json(std::string_view text) {
    // Object keys are deduplicated by the parser, so duplicate set names are caught here.
    std::string top_key;
    std::unordered_set<std::string> set_keys;
    std::string duplicate;
    auto cb = [&](int depth, ordered_json::parse_event_t event, ordered_json& parsed) {
        if (event == ordered_json::parse_event_t::key) {
            if (depth == 1) {
                top_key = parsed.get<std::string>();
            } else if (depth == 2 && top_key == "sets") {
                const auto k = parsed.get<std::string>();
                if (!set_keys.insert(k).second && duplicate.empty()) duplicate = k;
            }
        }
        return true;
    };
    ordered_json doc;
    try {
        doc = ordered_json::parse(text.begin(), text.end(), cb);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!duplicate.empty()) throw ParseError("sets: duplicate set name '" + duplicate + "'");
    if (!doc.is_object()) throw ParseError("top level: expected an object");
    if (!doc.contains("sets")) throw ParseError("top level: missing field 'sets'");

    std::vector<SetSystem::RawSet> sets;
    const auto& js = doc["sets"];
    if (js.is_object()) {
        for (auto it = js.begin(); it != js.end(); ++it) {
            sets.push_back({it.key(), string_list(it.value(), "sets." + it.key())});
        }
    } else if (js.is_array()) {
        for (std::size_t i = 0; i < js.size(); ++i) {
            const std::string where = "sets[" + std::to_string(i) + "]";
            const auto& item = js[i];
            if (!item.is_object() || !item.contains("name") || !item.contains("members")) {
                throw ParseError(where + ": expected {\"name\": ..., \"members\": [...]}");
            }
            sets.push_back({expect_string(item["name"], where + ".name"), string_list(item["members"], where + ".members")});
        }
    } else {
        throw ParseError("sets: expected an object or an array");
    }

    std::vector<std::string> elements;
    if (doc.contains("elements")) {
        elements = string_list(doc["elements"], "elements");
    } else {
        std::unordered_set<std::string> seen;
        for (const auto& s : sets) {
            for (const auto& m : s.members) {
                if (seen.insert(m).second) elements.push_back(m);
            }
        }
    }
    return SetSystem::create(std::move(elements), sets);
}

SetSystem parse_instance_csv(std::string_view text) {
    std::vector<std::string> elements;
    std::vector<SetSystem::RawSet> sets;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line, line_no);
        if (!header_seen) {
            header_seen = true;
            elements.assign(cells.begin() + 1, cells.end());
            if (elements.empty()) throw ParseError("line " + std::to_string(line_no) + ": header lists no elements");
            continue;
        }
        const std::string where = "line " + std::to_string(line_no);
        if (cells.size() != elements.size() + 1) {
            throw ParseError(where + ": expected " + std::to_string(elements.size() + 1) + " cells, found " +
                             std::to_string(cells.size()));
        }
        SetSystem::RawSet raw{cells[0], {}};
        if (raw.name.empty()) throw ParseError(where + ": missing set name");
        for (std::size_t c = 1; c < cells.size(); ++c) {
            if (cells[c] == "1") {
                raw.members.push_back(elements[c - 1]);
            } else if (cells[c] != "0") {
                throw ParseError(where + ", column '" + elements[c - 1] + "': expected 0 or 1, found '" + cells[c] + "'");
            }
        }
        if (raw.members.empty()) throw ParseError(where + ": set '" + raw.name + "' is empty");
        sets.push_back(std::move(raw));
    }
    if (!header_seen) throw ParseError("empty CSV document");
    return SetSystem::create(std::move(elements), sets);
}

SetSystem parse_instance(const std::filesystem::path& path, std::optional<InstanceFormat> format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    const InstanceFormat fmt = format.value_or(path.extension() == ".csv" ? InstanceFormat::Csv : InstanceFormat::Json);
    try {
        return fmt == InstanceFormat::Csv ? parse_instance_csv(buf.str()) : parse_instance_json(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string instance_to_json(const SetSystem& sys) {
    ordered_json doc;
    doc["elements"] = sys.elements();
    ordered_json sets = ordered_json::object();
    for (const auto& s : sys.sets()) {
        ordered_json members = ordered_json::array();
        for (auto m : s.members) members.push_back(sys.elements()[m]);
        sets[s.name] = std::move(members);
    }
    doc["sets"] = std::move(sets);
    return doc.dump(2) + "\n";
}

}  // namespace linzip
