#include "arzela/log.hpp"

#include <cstdlib>
#include <iostream>

namespace arzela {

int log_level() {
    static const int level = [] {
        const char* raw = std::getenv("ARZELA_LOG");
        if (!raw || !*raw) return 0;
        std::string s(raw);
        if (s == "0" || s == "off") return 0;
        if (s == "2" || s == "debug") return 2;
        return 1;
    }();
    return level;
}

void log_info(const std::string& message) {
    if (log_level() >= 1) std::cerr << "[info] " << message << "\n";
}

void log_debug(const std::string& message) {
    if (log_level() >= 2) std::cerr << "[debug] " << message << "\n";
}

}  // namespace arzela
