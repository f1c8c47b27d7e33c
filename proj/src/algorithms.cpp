#include "pureheap/algorithms.hpp"

#include "pureheap/errors.hpp"

namespace pureheap {

namespace {

bool ask(SubopFacade& f, const Suboperation& op) {
    std::optional<bool> r = f.apply(op);
    if (!r.has_value()) fail(ErrorCode::ReplayDivergence, "expected an answering suboperation");
    return *r;
}

// Pair the node under register 1 with its right sibling under register 2,
// smaller key winning.  Register 1 ends on the winner; both registers hold
// fresh root certificates going in, as Pair requires.
void pair_with_right_sibling(SubopFacade& f) {
    f.apply(Suboperation::set(2, 1));
    ask(f, Suboperation::has_right_sibling(2));
    f.apply(Suboperation::move_to_right_sibling(2));
    if (!ask(f, Suboperation::compare(1, 2))) f.apply(Suboperation::swap(1, 2));
    ask(f, Suboperation::has_parent(1));
    ask(f, Suboperation::has_parent(2));
    f.apply(Suboperation::pair(1, 2));
}

// One left-to-right pairing pass over the roots.  Entered with register 1 on
// the leftmost root, which is known to have a right sibling; leaves register
// 1 on the rightmost root.
void pass_left_to_right(SubopFacade& f) {
    for (;;) {
        pair_with_right_sibling(f);
        if (!ask(f, Suboperation::has_right_sibling(1))) return;  // winner is rightmost
        f.apply(Suboperation::move_to_right_sibling(1));
        if (!ask(f, Suboperation::has_right_sibling(1))) return;  // odd root left over
    }
}

// Certify sole-root status on register 1 and close the session.
void certify_and_end(SubopFacade& f) {
    ask(f, Suboperation::has_parent(1));
    ask(f, Suboperation::has_left_sibling(1));
    ask(f, Suboperation::has_right_sibling(1));
    f.apply(Suboperation::end());
}

}  // namespace

void two_pass_program(SubopFacade& f) {
    if (ask(f, Suboperation::has_right_sibling(1))) pass_left_to_right(f);
    // Combine right-to-left; the winner of each pairing is the rightmost root,
    // and register 1 stays on it.
    while (ask(f, Suboperation::has_left_sibling(1))) {
        f.apply(Suboperation::set(2, 1));
        ask(f, Suboperation::has_left_sibling(2));
        f.apply(Suboperation::move_to_left_sibling(2));
        if (!ask(f, Suboperation::compare(1, 2))) f.apply(Suboperation::swap(1, 2));
        ask(f, Suboperation::has_parent(1));
        ask(f, Suboperation::has_parent(2));
        f.apply(Suboperation::pair(1, 2));
    }
    certify_and_end(f);
}

void multipass_program(SubopFacade& f) {
    for (;;) {
        // Register 1 is on the leftmost root here.
        if (!ask(f, Suboperation::has_right_sibling(1))) break;  // sole root
        pass_left_to_right(f);
        while (ask(f, Suboperation::has_left_sibling(1)))
            f.apply(Suboperation::move_to_left_sibling(1));
    }
    certify_and_end(f);
}

std::optional<bool> ReplayFacade::apply(const Suboperation& op) {
    if (next_ >= trace_.size())
        fail(ErrorCode::ReplayDivergence, "program issued more suboperations than recorded");
    const TraceEntry& e = trace_[next_];
    if (e.op.kind != op.kind || e.op.a != op.a || e.op.b != op.b)
        fail(ErrorCode::ReplayDivergence,
             "issued " + format_trace_entry({op, std::nullopt}) + " but recorded " +
                 format_trace_entry(e));
    ++next_;
    return e.ret;
}

const std::vector<AlgorithmInfo>& algorithm_registry() {
    static const std::vector<AlgorithmInfo> reg = {
        {"two-pass", two_pass_program},
        {"multipass", multipass_program},
    };
    return reg;
}

const AlgorithmInfo* find_algorithm(const std::string& name) {
    for (const AlgorithmInfo& a : algorithm_registry())
        if (a.name == name) return &a;
    return nullptr;
}

ExtractMinOutcome run_extract_min(Forest& forest, const ExtractMinProgram& program, int rho) {
    ExtractMinSession session(forest, rho);
    SessionFacade facade(session);
    program(facade);
    ExtractMinOutcome out;
    out.trace = session.trace();
    out.newly_marked = session.newly_marked();
    out.subops = (long long)session.subop_count();
    out.victim = forest.roots_rtl().at(0);
    out.removed = session.finish();
    return out;
}

}  // namespace pureheap
