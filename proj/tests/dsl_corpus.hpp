#pragma once

#include <fstream>
#include <string>
#include <vector>

struct CorpusEntry {
    std::string tag;
    std::string expr;
};

inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    std::vector<CorpusEntry> out;
    std::string line;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(' ');
        auto e = s.find_last_not_of(' ');
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto bar = line.find('|');
        out.push_back({trim(line.substr(0, bar)), trim(line.substr(bar + 1))});
    }
    return out;
}
