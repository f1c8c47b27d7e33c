#include "pureheap/position.hpp"

#include <cstdlib>

#include "pureheap/errors.hpp"

namespace pureheap {

std::string Position::to_string() const {
    if (path.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(path[i]);
    }
    return out;
}

Position Position::parse(const std::string& text) {
    Position p;
    if (text == "-" || text.empty()) return p;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = text.find('.', i);
        if (j == std::string::npos) j = text.size();
        if (j == i) fail(ErrorCode::ParseError, "empty component in position '" + text + "'");
        std::uint32_t v = 0;
        for (std::size_t k = i; k < j; ++k) {
            char c = text[k];
            if (c < '0' || c > '9')
                fail(ErrorCode::ParseError, "bad character in position '" + text + "'");
            v = v * 10 + std::uint32_t(c - '0');
        }
        p.path.push_back(v);
        i = j + 1;
    }
    return p;
}

}  // namespace pureheap
