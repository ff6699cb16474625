#include "report.hpp"

#include <algorithm>
#include <sstream>

namespace eqz::cli {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
        case Status::Refused: return "refused";
    }
    return "?";
}

Status Report::status() const {
    for (const auto& c : checks)
        if (c.status == Status::Fail) return Status::Fail;
    return Status::Pass;
}

Json Report::to_json() const {
    Json j;
    j["fixture"] = fixture;
    j["kind"] = kind;
    j["command"] = command;
    j["status"] = to_string(status());
    if (expect_failure) j["expect_failure"] = true;
    j["checks"] = Json::array();
    for (const auto& c : checks) {
        Json cj;
        cj["name"] = c.name;
        cj["status"] = to_string(c.status);
        if (!c.detail.empty()) cj["detail"] = c.detail;
        if (!c.witness.is_null()) cj["witness"] = c.witness;
        j["checks"].push_back(std::move(cj));
    }
    j["tables"] = tables;
    return j;
}

namespace {

std::string cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

// A table of equal-length arrays is printed as aligned rows; anything
// else is printed as compact JSON.
void render_value(std::ostringstream& os, const std::string& name, const Json& t) {
    bool rows = t.is_object() && !t.empty();
    std::size_t len = 0;
    if (rows)
        for (const auto& [k, v] : t.items()) {
            if (!v.is_array()) rows = false;
            else len = std::max(len, v.size());
        }
    if (!rows) {
        os << "  " << name << ": " << cell(t) << "\n";
        return;
    }
    std::size_t label = 0;
    std::vector<std::size_t> width(len, 1);
    for (const auto& [k, v] : t.items()) {
        label = std::max(label, k.size());
        for (std::size_t i = 0; i < v.size(); ++i) width[i] = std::max(width[i], cell(v[i]).size());
    }
    os << "  " << name << "\n";
    for (const auto& [k, v] : t.items()) {
        os << "    " << k << std::string(label - k.size(), ' ');
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string c = cell(v[i]);
            os << "  " << std::string(width[i] - c.size(), ' ') << c;
        }
        os << "\n";
    }
}

}  // namespace

std::string render_table(const Report& r) {
    std::ostringstream os;
    std::string status = to_string(r.status());
    if (r.expect_failure) status += r.as_expected() ? " (expected)" : " (unexpected)";
    os << r.fixture << " [" << r.kind << "] " << r.command << ": " << status << "\n";
    for (const auto& c : r.checks) {
        os << "  " << to_string(c.status) << std::string(8 - to_string(c.status).size(), ' ') << c.name;
        if (!c.detail.empty()) os << "  " << c.detail;
        os << "\n";
        if (!c.witness.is_null()) os << "          witness: " << c.witness.dump() << "\n";
    }
    for (const auto& [k, v] : r.tables.items()) render_value(os, k, v);
    return os.str();
}

}  // namespace eqz::cli
