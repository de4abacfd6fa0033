#pragma once

#include "rainbow/poset.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace rainbow {

// Text format, one poset per file:
//
//   poset n=<k>
//   # label <i> <name>      (optional, one per labelled element)
//   a < b                   (one line per cover, 0-based)
//
// Any other line starting with '#' is a comment. Serialisation emits covers in
// sorted order, which makes parse/serialise round trips byte-exact.

inline std::string serialize_poset(const Poset& p)
{
    std::ostringstream out;
    out << "poset n=" << p.size() << "\n";
    for (Element x = 0; x < p.labels().size(); ++x) {
        if (!p.labels()[x].empty()) out << "# label " << x << " " << p.labels()[x] << "\n";
    }
    for (auto [a, b] : p.covers()) out << a << " < " << b << "\n";
    return out.str();
}

inline Poset parse_poset(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Cover> arcs;
    std::vector<std::pair<Element, std::string>> named;
    std::size_t line_no = 0;
    auto bad = [&](const std::string& why) { fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": " + why); };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        std::string body = line.substr(first);
        if (body[0] == '#') {
            std::istringstream c(body.substr(1));
            std::string word;
            Element idx = 0;
            if (c >> word && word == "label" && c >> idx) {
                std::string name;
                std::getline(c, name);
                auto s = name.find_first_not_of(" \t");
                named.emplace_back(idx, s == std::string::npos ? std::string() : name.substr(s));
            }
            continue;
        }
        if (!have_header) {
            if (body.rfind("poset n=", 0) != 0) bad("expected header 'poset n=<k>'");
            try {
                std::size_t used = 0;
                n = std::stoul(body.substr(8), &used);
                if (body.find_first_not_of(" \t", 8 + used) != std::string::npos) bad("trailing text after header");
            }
            catch (const std::logic_error&) {
                bad("malformed element count");
            }
            have_header = true;
            continue;
        }
        std::istringstream c(body);
        long long a = -1, b = -1;
        char op = 0;
        std::string rest;
        if (!(c >> a >> op >> b) || op != '<' || (c >> rest)) bad("expected 'a < b'");
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) bad("index out of range");
        arcs.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
    }
    if (!have_header) fail(ErrorKind::parse_error, "missing 'poset n=<k>' header");
    std::vector<std::string> labels;
    if (!named.empty()) {
        labels.assign(n, "");
        for (auto& [idx, name] : named) {
            if (idx >= n) fail(ErrorKind::parse_error, "label index out of range");
            labels[idx] = name;
        }
    }
    return make_poset(n, arcs, std::move(labels));
}

inline Poset read_poset_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorKind::parse_error, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_poset(buf.str());
}

} // namespace rainbow
