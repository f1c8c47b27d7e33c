#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace pureheap {

// Ordered plain-text report: one `key = value` per line, '#' comments and
// blank separators allowed.  Order is preserved so identical runs produce
// byte-identical files; duplicate keys are legal (e.g. per-round rows).
class Report {
  public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, long long value);
    void add(const std::string& key, double value);  // shortest round-trip form
    void add_comment(const std::string& text);
    void add_blank();

    bool has(const std::string& key) const;
    // First value for the key; ParseError if absent.
    const std::string& get(const std::string& key) const;
    long long get_int(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::vector<std::string> get_all(const std::string& key) const;

    std::size_t size() const { return rows_.size(); }

    void write(std::ostream& out) const;
    static Report read(std::istream& in);  // ParseError on malformed lines

  private:
    struct Row {
        enum Kind { Pair, Comment, Blank } kind;
        std::string key, value;
    };
    std::vector<Row> rows_;
};

}  // namespace pureheap
