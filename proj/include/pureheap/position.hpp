#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pureheap {

// A position names a node by the path of right-based indices leading to it:
// path[0] is the index of its root counted from the right (0 = rightmost
// root), path[1] the right-based index among that root's children, and so on.
// Counting from the right keeps positions stable under the only insertion the
// model allows, which is adding a new sibling at the far left.
struct Position {
    std::vector<std::uint32_t> path;

    bool is_null() const { return path.empty(); }
    std::string to_string() const;          // "2.0.1"; "-" for the null position
    static Position parse(const std::string& text);

    friend bool operator==(const Position& a, const Position& b) { return a.path == b.path; }
    friend bool operator!=(const Position& a, const Position& b) { return !(a == b); }
    friend bool operator<(const Position& a, const Position& b) { return a.path < b.path; }
};

}  // namespace pureheap
