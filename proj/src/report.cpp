#include "pureheap/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "pureheap/errors.hpp"

namespace pureheap {

void Report::add(const std::string& key, const std::string& value) {
    rows_.push_back({Row::Pair, key, value});
}

void Report::add(const std::string& key, long long value) {
    add(key, std::to_string(value));
}

void Report::add(const std::string& key, double value) {
    // %.17g round-trips; trim to the shortest representation that still does.
    char buf[64];
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, value);
        double back = std::strtod(buf, nullptr);
        if (back == value || (std::isnan(back) && std::isnan(value))) break;
    }
    add(key, std::string(buf));
}

void Report::add_comment(const std::string& text) {
    rows_.push_back({Row::Comment, "", text});
}

void Report::add_blank() { rows_.push_back({Row::Blank, "", ""}); }

bool Report::has(const std::string& key) const {
    for (const Row& r : rows_)
        if (r.kind == Row::Pair && r.key == key) return true;
    return false;
}

const std::string& Report::get(const std::string& key) const {
    for (const Row& r : rows_)
        if (r.kind == Row::Pair && r.key == key) return r.value;
    throw VmError(ErrorCode::ParseError, "report key not found: " + key);
}

long long Report::get_int(const std::string& key) const {
    return std::stoll(get(key));
}

double Report::get_double(const std::string& key) const {
    return std::strtod(get(key).c_str(), nullptr);
}

std::vector<std::string> Report::get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const Row& r : rows_)
        if (r.kind == Row::Pair && r.key == key) out.push_back(r.value);
    return out;
}

void Report::write(std::ostream& out) const {
    for (const Row& r : rows_) {
        switch (r.kind) {
            case Row::Pair: out << r.key << " = " << r.value << "\n"; break;
            case Row::Comment: out << "# " << r.value << "\n"; break;
            case Row::Blank: out << "\n"; break;
        }
    }
}

Report Report::read(std::istream& in) {
    Report rep;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) {
            rep.add_blank();
            continue;
        }
        if (line[start] == '#') {
            std::size_t text = line.find_first_not_of(" \t", start + 1);
            rep.add_comment(text == std::string::npos ? "" : line.substr(text));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw VmError(ErrorCode::ParseError, "report line without '=': " + line);
        if (eq <= start)
            throw VmError(ErrorCode::ParseError, "report line without key: " + line);
        std::size_t key_end = line.find_last_not_of(" \t", eq - 1);
        if (key_end == std::string::npos || key_end < start)
            throw VmError(ErrorCode::ParseError, "report line without key: " + line);
        std::size_t val_start = line.find_first_not_of(" \t", eq + 1);
        std::size_t val_end = line.find_last_not_of(" \t");
        std::string value = val_start == std::string::npos
                                ? ""
                                : line.substr(val_start, val_end - val_start + 1);
        rep.add(line.substr(start, key_end - start + 1), value);
    }
    return rep;
}

}  // namespace pureheap
