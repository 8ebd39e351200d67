#include "psido/run_report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace psido {

bool RunReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass()) return false;
    return true;
}

static nlohmann::ordered_json report_body(const RunReport& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = c.pass() ? "pass" : "fail";
        e["residual"] = format_sci(c.residual);
        e["tolerance"] = format_sci(c.tolerance);
        j["checks"].push_back(e);
    }
    j["artifacts"] = r.artifacts;
    return j;
}

std::string RunReport::to_json() const { return report_body(*this).dump(2); }

std::string RunReport::to_console_json() const {
    auto j = report_body(*this);
    j["wall_time_s"] = wall_time_s;
    return j.dump(2);
}

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

}  // namespace psido
