#include "pureheap/subop.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <sstream>

namespace pureheap {

namespace {

struct KindInfo {
    const char* name;
    int arity;
    bool returns;
};

// Order must match SubopKind.
constexpr std::array<KindInfo, kSubopKindCount> kKinds{{
    {"HASPARENT", 1, true},
    {"HASLEFTSIBLING", 1, true},
    {"HASRIGHTSIBLING", 1, true},
    {"HASCHILDREN", 1, true},
    {"COMPARE", 2, true},
    {"PAIR", 2, true},
    {"UNPAIR", 1, false},
    {"SET", 2, false},
    {"SWAP", 2, false},
    {"MOVETOPARENT", 1, false},
    {"MOVETOLEFTMOSTCHILD", 1, false},
    {"MOVETORIGHTSIBLING", 1, false},
    {"MOVETOLEFTSIBLING", 1, false},
    {"END", 0, false},
}};

const KindInfo& info(SubopKind k) { return kKinds[std::size_t(k)]; }

}  // namespace

int subop_arity(SubopKind k) { return info(k).arity; }
bool subop_returns_bool(SubopKind k) { return info(k).returns; }

std::uint32_t TraceEntry::encode() const {
    std::uint32_t r = ret.has_value() ? (*ret ? 2u : 1u) : 0u;
    return (std::uint32_t(op.kind) << 20) | (std::uint32_t(op.a & 0xff) << 12) |
           (std::uint32_t(op.b & 0xff) << 4) | r;
}

std::string format_trace_entry(const TraceEntry& e) {
    const KindInfo& k = info(e.op.kind);
    std::string out = k.name;
    if (k.arity >= 1) out += ' ' + std::to_string(e.op.a);
    if (k.arity >= 2) out += ' ' + std::to_string(e.op.b);
    if (e.ret.has_value()) {
        out += " -> ";
        if (e.op.kind == SubopKind::Pair)
            out += *e.ret ? "inc" : "noinc";
        else
            out += *e.ret ? "true" : "false";
    }
    return out;
}

TraceEntry parse_trace_entry(const std::string& line) {
    std::istringstream in(line);
    std::string mnemonic;
    if (!(in >> mnemonic)) fail(ErrorCode::ParseError, "empty trace line");

    int kind = -1;
    for (int i = 0; i < kSubopKindCount; ++i)
        if (mnemonic == kKinds[std::size_t(i)].name) kind = i;
    if (kind < 0) fail(ErrorCode::ParseError, "unknown suboperation '" + mnemonic + "'");

    TraceEntry e;
    e.op.kind = SubopKind(kind);
    const KindInfo& k = info(e.op.kind);
    if (k.arity >= 1 && !(in >> e.op.a))
        fail(ErrorCode::ParseError, "missing argument in '" + line + "'");
    if (k.arity >= 2 && !(in >> e.op.b))
        fail(ErrorCode::ParseError, "missing argument in '" + line + "'");

    std::string arrow, value;
    if (in >> arrow) {
        if (arrow != "->" || !(in >> value))
            fail(ErrorCode::ParseError, "malformed return in '" + line + "'");
        if (value == "true" || value == "inc")
            e.ret = true;
        else if (value == "false" || value == "noinc")
            e.ret = false;
        else
            fail(ErrorCode::ParseError, "bad return value '" + value + "'");
        std::string rest;
        if (in >> rest) fail(ErrorCode::ParseError, "trailing tokens in '" + line + "'");
    }
    return e;
}

void write_trace(std::ostream& out, const Trace& t,
                 const std::vector<std::string>& header_comments) {
    for (const std::string& c : header_comments) out << "# " << c << '\n';
    for (const TraceEntry& e : t) out << format_trace_entry(e) << '\n';
}

ParsedTrace read_trace(std::istream& in) {
    ParsedTrace out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            out.comments.push_back(line);
            continue;
        }
        out.entries.push_back(parse_trace_entry(line));
    }
    return out;
}

long long subop_alphabet_size(int rho) {
    long long r = rho;
    return 4 * r * r + 9 * r + 1;
}

}  // namespace pureheap
