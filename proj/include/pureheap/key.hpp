#pragma once

#include <cstdint>
#include <string>

namespace pureheap {

// A key is an integer value extended with a negative-infinity sentinel, plus
// an insertion serial that breaks ties.  The serial makes the order total:
// no two live nodes ever compare equal, so "smaller" and "not larger" agree.
struct Key {
    long long value = 0;
    bool neg_inf = false;
    std::uint64_t serial = 0;

    std::string to_string() const;
};

// Lexicographic (neg_inf, value, serial).  Earlier-inserted wins value ties.
inline bool key_less(const Key& a, const Key& b) {
    if (a.neg_inf != b.neg_inf) return a.neg_inf;
    if (a.neg_inf && b.neg_inf) return a.serial < b.serial;
    if (a.value != b.value) return a.value < b.value;
    return a.serial < b.serial;
}

inline bool key_leq(const Key& a, const Key& b) {
    return !key_less(b, a);
}

}  // namespace pureheap
