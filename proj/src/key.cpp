#include "pureheap/key.hpp"

namespace pureheap {

std::string Key::to_string() const {
    if (neg_inf) return "-inf#" + std::to_string(serial);
    return std::to_string(value) + "#" + std::to_string(serial);
}

}  // namespace pureheap
