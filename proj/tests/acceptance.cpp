// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
//
//   acceptance                 every criterion at full size
//   acceptance --quick         smaller samples, size-6 searches
//   acceptance --skip 4 7      leave criteria out
//   acceptance --only 3        run a single criterion

#include "rainbow/suite.hpp"

#include <cctype>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    rainbow::suite::Config cfg;
    std::vector<int> only, skip;
    std::vector<int>* target = nullptr;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--quick") cfg.tier = rainbow::suite::Tier::quick, target = nullptr;
        else if (a == "--only") target = &only;
        else if (a == "--skip") target = &skip;
        else if (a == "--seed" && i + 1 < argc) cfg.seed = std::strtoull(argv[++i], nullptr, 10), target = nullptr;
        else if (target && !a.empty() && std::isdigit(static_cast<unsigned char>(a[0]))) target->push_back(std::atoi(a.c_str()));
        else {
            std::cerr << "usage: acceptance [--quick] [--seed N] [--only ids...] [--skip ids...]\n";
            return 2;
        }
    }
    std::size_t failed = 0, run = 0;
    rainbow::suite::run(cfg, only, skip, [&](const rainbow::suite::Result& r) {
        std::cout << rainbow::suite::format_line(r) << std::endl;
        if (!r.skipped) ++run;
        if (!r.passed) ++failed;
    });
    std::cout << (run - failed) << "/" << run << " criteria passed\n";
    return failed ? 1 : 0;
}
