#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pureheap/errors.hpp"

namespace pureheap {

// The fourteen suboperations an extract-min is built from.  Pointer
// arguments are 1-based indices into the session's register file.
enum class SubopKind : std::uint8_t {
    HasParent,
    HasLeftSibling,
    HasRightSibling,
    HasChildren,
    Compare,
    Pair,
    Unpair,
    Set,
    Swap,
    MoveToParent,
    MoveToLeftmostChild,
    MoveToRightSibling,
    MoveToLeftSibling,
    End,
};

inline constexpr int kSubopKindCount = 14;

struct Suboperation {
    SubopKind kind = SubopKind::End;
    int a = 0;  // first pointer index, when the kind takes one
    int b = 0;  // second pointer index, when the kind takes two

    static Suboperation has_parent(int i) { return {SubopKind::HasParent, i, 0}; }
    static Suboperation has_left_sibling(int i) { return {SubopKind::HasLeftSibling, i, 0}; }
    static Suboperation has_right_sibling(int i) { return {SubopKind::HasRightSibling, i, 0}; }
    static Suboperation has_children(int i) { return {SubopKind::HasChildren, i, 0}; }
    static Suboperation compare(int i, int j) { return {SubopKind::Compare, i, j}; }
    static Suboperation pair(int i, int j) { return {SubopKind::Pair, i, j}; }
    static Suboperation unpair(int i) { return {SubopKind::Unpair, i, 0}; }
    static Suboperation set(int i, int j) { return {SubopKind::Set, i, j}; }
    static Suboperation swap(int i, int j) { return {SubopKind::Swap, i, j}; }
    static Suboperation move_to_parent(int i) { return {SubopKind::MoveToParent, i, 0}; }
    static Suboperation move_to_leftmost_child(int i) { return {SubopKind::MoveToLeftmostChild, i, 0}; }
    static Suboperation move_to_right_sibling(int i) { return {SubopKind::MoveToRightSibling, i, 0}; }
    static Suboperation move_to_left_sibling(int i) { return {SubopKind::MoveToLeftSibling, i, 0}; }
    static Suboperation end() { return {SubopKind::End, 0, 0}; }
};

int subop_arity(SubopKind k);
bool subop_returns_bool(SubopKind k);  // predicates, Compare, and Pair report back

// One executed suboperation with its reported answer, if any.  Pair reports
// whether the winner's rank rose (written "inc"/"noinc" in text form).
struct TraceEntry {
    Suboperation op;
    std::optional<bool> ret;

    // Dense encoding used for the fixed total order that breaks majority
    // ties; also a convenient equality witness.
    std::uint32_t encode() const;
    friend bool operator==(const TraceEntry& x, const TraceEntry& y) {
        return x.encode() == y.encode();
    }
};

using Trace = std::vector<TraceEntry>;

// Text form, one entry per line: "PAIR 1 2 -> inc", "HASPARENT 1 -> false",
// "END".  Lines beginning with '#' are comments and survive round-trips.
std::string format_trace_entry(const TraceEntry& e);
TraceEntry parse_trace_entry(const std::string& line);  // ParseError on bad input

void write_trace(std::ostream& out, const Trace& t,
                 const std::vector<std::string>& header_comments = {});
struct ParsedTrace {
    Trace entries;
    std::vector<std::string> comments;  // in file order, '#' retained
};
ParsedTrace read_trace(std::istream& in);

// Count of syntactically distinct (suboperation, arguments) forms with rho
// registers: nine one-argument forms (4 predicates, Unpair, 4 moves), four
// two-argument forms (Compare, Pair, Set, Swap), and End, so 4*rho^2 + 9*rho
// + 1.  The symbol alphabet for pruning arithmetic is twice this, counting
// boolean answers separately.
long long subop_alphabet_size(int rho);

inline constexpr int kDefaultRho = 8;

}  // namespace pureheap
