#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmforge/session.hpp"

namespace gmforge::report {

/// One expected-vs-computed comparison. `tag` records where the expected
/// value comes from: "reference" (a published value), "derived" (an
/// independent computation), or "direct" (immediate bookkeeping).
struct CheckLine {
    std::string name;
    std::string expected;
    std::string computed;
    std::string tag;
    bool pass = false;
    bool expected_discrepancy = false;

    static CheckLine make(std::string name, std::int64_t expected, std::int64_t computed,
                          std::string tag);
    static CheckLine make_str(std::string name, std::string expected, std::string computed,
                              std::string tag);
};

struct Section {
    std::string name;
    std::vector<CheckLine> lines;
    std::int64_t elapsed_ms = 0;

    bool ok() const;
    void add(CheckLine line) { lines.push_back(std::move(line)); }
};

/// Full run report; serializes as text or as `gmforge-report v1` JSON with
/// identical numeric content.
struct Report {
    std::string command;
    arith::Coeff prime = 0;
    std::uint64_t seed = 0;
    std::string tier = "core";
    std::vector<Section> sections;

    bool ok() const;
    std::string text() const;
    std::string json() const;
    static Report from_json(const std::string& s);
};

}  // namespace gmforge::report
