#include "gmforge/report.hpp"

#include <json.hpp>
#include <sstream>

namespace gmforge::report {

using jsonv = nlohmann::json;

CheckLine CheckLine::make(std::string name, std::int64_t expected, std::int64_t computed,
                          std::string tag) {
    CheckLine l;
    l.name = std::move(name);
    l.expected = std::to_string(expected);
    l.computed = std::to_string(computed);
    l.tag = std::move(tag);
    l.pass = expected == computed;
    return l;
}

CheckLine CheckLine::make_str(std::string name, std::string expected, std::string computed,
                              std::string tag) {
    CheckLine l;
    l.name = std::move(name);
    l.pass = expected == computed;
    l.expected = std::move(expected);
    l.computed = std::move(computed);
    l.tag = std::move(tag);
    return l;
}

bool Section::ok() const {
    for (auto& l : lines)
        if (!l.pass) return false;
    return true;
}

bool Report::ok() const {
    for (auto& s : sections)
        if (!s.ok()) return false;
    return true;
}

std::string Report::text() const {
    std::ostringstream os;
    os << "gmforge " << command << "  (p=" << prime << " seed=" << seed << " tier=" << tier
       << ")\n";
    for (auto& s : sections) {
        os << "== " << s.name;
        if (s.elapsed_ms > 0) os << "  [" << s.elapsed_ms << " ms]";
        os << "\n";
        for (auto& l : s.lines) {
            os << (l.pass ? "  ok   " : "  FAIL ") << l.name << ": expected " << l.expected
               << ", computed " << l.computed << "  (" << l.tag << ")";
            if (l.expected_discrepancy) os << " [expected discrepancy]";
            os << "\n";
        }
    }
    os << (ok() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string Report::json() const {
    jsonv j;
    j["schema"] = "gmforge-report v1";
    j["command"] = command;
    j["prime"] = prime;
    j["seed"] = seed;
    j["tier"] = tier;
    j["ok"] = ok();
    j["sections"] = jsonv::array();
    for (auto& s : sections) {
        jsonv sec;
        sec["name"] = s.name;
        sec["elapsed_ms"] = s.elapsed_ms;
        sec["lines"] = jsonv::array();
        for (auto& l : s.lines) {
            jsonv jl;
            jl["name"] = l.name;
            jl["expected"] = l.expected;
            jl["computed"] = l.computed;
            jl["tag"] = l.tag;
            jl["pass"] = l.pass;
            if (l.expected_discrepancy) jl["expected_discrepancy"] = true;
            sec["lines"].push_back(std::move(jl));
        }
        j["sections"].push_back(std::move(sec));
    }
    return j.dump(2);
}

Report Report::from_json(const std::string& s) {
    jsonv j = jsonv::parse(s);
    if (j.at("schema").get<std::string>() != "gmforge-report v1")
        throw ParseError("unknown report schema");
    Report r;
    r.command = j.at("command").get<std::string>();
    r.prime = j.at("prime").get<arith::Coeff>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.tier = j.at("tier").get<std::string>();
    for (auto& sec : j.at("sections")) {
        Section s2;
        s2.name = sec.at("name").get<std::string>();
        s2.elapsed_ms = sec.at("elapsed_ms").get<std::int64_t>();
        for (auto& jl : sec.at("lines")) {
            CheckLine l;
            l.name = jl.at("name").get<std::string>();
            l.expected = jl.at("expected").get<std::string>();
            l.computed = jl.at("computed").get<std::string>();
            l.tag = jl.at("tag").get<std::string>();
            l.pass = jl.at("pass").get<bool>();
            l.expected_discrepancy = jl.value("expected_discrepancy", false);
            s2.lines.push_back(std::move(l));
        }
        r.sections.push_back(std::move(s2));
    }
    return r;
}

}  // namespace gmforge::report
