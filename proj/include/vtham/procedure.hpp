#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vtham/factorization.hpp"
#include "vtham/graph.hpp"
#include "vtham/hamilton.hpp"
#include "vtham/two_factor.hpp"

namespace vtham {

enum class ProcedureOutcome { hamilton_cycle_found, factor_missing, lift_failed, budget_exhausted };

inline const char* to_string(ProcedureOutcome o) {
    switch (o) {
        case ProcedureOutcome::hamilton_cycle_found: return "hamilton_cycle_found";
        case ProcedureOutcome::factor_missing: return "factor_missing";
        case ProcedureOutcome::lift_failed: return "lift_failed";
        case ProcedureOutcome::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

// One level of the contract-and-recurse run. The quotient and its three
// hypothesis flags are only populated when the level actually contracted
// (cycle count > 1). A nullopt flag means the check itself could not run.
struct ProcedureLevel {
    Graph graph;
    FactorSearchResult factor;
    std::optional<Graph> quotient;
    std::optional<bool> quotient_connected;
    std::optional<bool> quotient_odd_order;
    std::optional<bool> quotient_vertex_transitive;
    std::vector<std::string> notes;
};

struct ProcedureTrace {
    std::vector<ProcedureLevel> levels;
    ProcedureOutcome outcome = ProcedureOutcome::budget_exhausted;
    std::optional<Cycle> cycle; // over the level-0 graph's vertices
};

struct ProcedureOptions {
    FactorSearchOptions factor{};
    Deadline deadline;
    bool assume_vertex_transitive = false;
};

struct LiftOptions {
    Deadline deadline;
};

// Reconstructs a Hamilton cycle of g from a Hamilton cycle qc of the quotient
// whose blocks are cert's factor cycles. Between consecutive blocks of qc a
// connecting graph edge is chosen by backtracking; a block entered at e must
// be exited at a vertex adjacent to e on its factor cycle (distinct from e),
// since only then does one arc of the factor cycle cover the whole block.
// With cycle count 1 there is nothing to splice (pass qc = nullopt) and the
// factor's single cycle is returned.
//
// timed_out, when supplied, distinguishes a budget cutoff from a proven
// absence of any splice assignment.
inline std::optional<Cycle> lift_hamilton_cycle(const Graph& g, const UniformOddCertificate& cert,
                                                const std::optional<Cycle>& qc,
                                                const LiftOptions& opts = {},
                                                bool* timed_out = nullptr) {
    if (timed_out) *timed_out = false;
    if (!validate_certificate(g, cert))
        throw std::invalid_argument("certificate does not validate against the graph");
    int c = cert.cycle_count;
    if (c == 1) {
        if (qc) throw std::invalid_argument("quotient cycle supplied for a single-cycle factor");
        return cert.factor.cycles.front();
    }
    if (!qc) throw std::invalid_argument("quotient cycle required when cycle count > 1");
    if (qc->length() != c)
        throw std::invalid_argument("quotient cycle does not visit every block once");
    for (int b : qc->vertices())
        if (b < 0 || b >= c) throw std::invalid_argument("quotient cycle names an unknown block");

    int ell = cert.cycle_length;
    const auto& order = qc->vertices(); // blocks in visiting order
    // position of each vertex on its factor cycle
    std::vector<int> block_of(g.vertex_count(), -1), pos_in(g.vertex_count(), -1);
    for (int b = 0; b < c; ++b) {
        const auto& vs = cert.factor.cycles[b].vertices();
        for (int i = 0; i < ell; ++i) {
            block_of[vs[i]] = b;
            pos_in[vs[i]] = i;
        }
    }
    auto cycle_at = [&](int b, int i) {
        return cert.factor.cycles[b].vertices()[((i % ell) + ell) % ell];
    };

    // entry[i]/exit[i] for the i-th visited block order[i]
    std::vector<int> entry(c, -1), exit_at(c, -1);
    std::uint64_t nodes = 0;
    bool expired = false;

    // exit candidates for a block entered at e: its two factor-cycle neighbours
    auto exits_of = [&](int e) {
        int b = block_of[e], p = pos_in[e];
        return std::array<int, 2>{cycle_at(b, p + 1), cycle_at(b, p - 1)};
    };

    std::function<bool(int)> splice = [&](int i) -> bool {
        if ((++nodes & 255) == 0 && deadline_expired(opts.deadline)) {
            expired = true;
            return false;
        }
        if (i == c) return g.adjacent(exit_at[c - 1], entry[0]);
        int prev_exit = exit_at[i - 1];
        int b = order[i];
        for (int e : g.neighbors(prev_exit)) {
            if (block_of[e] != b) continue;
            entry[i] = e;
            for (int x : exits_of(e)) {
                exit_at[i] = x;
                if (splice(i + 1)) return true;
                if (expired) return false;
            }
        }
        return false;
    };

    bool found = false;
    for (int e0 : cert.factor.cycles[order[0]].vertices()) {
        entry[0] = e0;
        for (int x : exits_of(e0)) {
            exit_at[0] = x;
            if (splice(1)) {
                found = true;
                break;
            }
            if (expired) break;
        }
        if (found || expired) break;
    }
    if (!found) {
        if (timed_out) *timed_out = expired;
        return std::nullopt;
    }

    // walk each block from entry to exit along the arc avoiding the direct step
    std::vector<int> verts;
    verts.reserve(g.vertex_count());
    for (int i = 0; i < c; ++i) {
        int b = order[i], e = entry[i], x = exit_at[i];
        int pe = pos_in[e];
        int dir = (cycle_at(b, pe + 1) == x) ? -1 : 1; // step away from the exit
        for (int k = 0; k < ell; ++k) verts.push_back(cycle_at(b, pe + dir * k));
    }
    Cycle lifted(verts);
    if (!is_cycle_of(g, lifted)) throw std::logic_error("lifted cycle failed validation");
    return lifted;
}

namespace procedure_detail {

inline int depth_cap(int n) {
    int cap = 1;
    while (n >= 3) {
        n /= 3;
        ++cap;
    }
    return cap;
}

struct LevelResult {
    std::optional<Cycle> cycle;
    ProcedureOutcome fail = ProcedureOutcome::budget_exhausted;
};

// Enumerates hamilton cycles of g (anchored at vertex 0, one per reflection
// class) until cb returns true. Returns whether cb stopped the walk; a
// deadline cutoff is reported through `expired`.
inline bool for_each_hamilton_cycle(const Graph& g, const Deadline& dl, bool& expired,
                                    const std::function<bool(const Cycle&)>& cb) {
    int n = g.vertex_count();
    std::vector<int> path{0};
    path.reserve(n);
    std::vector<char> used(n, 0);
    used[0] = 1;
    std::uint64_t nodes = 0;
    std::function<bool()> go = [&]() -> bool {
        if ((++nodes & 1023) == 0 && deadline_expired(dl)) {
            expired = true;
            return false;
        }
        int cur = path.back();
        if (static_cast<int>(path.size()) == n) {
            if (g.adjacent(cur, 0) && path[1] < path.back()) return cb(Cycle(path));
            return false;
        }
        for (int w : g.neighbors(cur)) {
            if (used[w]) continue;
            used[w] = 1;
            path.push_back(w);
            if (go()) return true;
            path.pop_back();
            used[w] = 0;
            if (expired) return false;
        }
        return false;
    };
    return go();
}

inline LevelResult run_level(const Graph& g, int depth, const ProcedureOptions& opts,
                             ProcedureTrace& trace) {
    if (depth > depth_cap(trace.levels.empty() ? g.vertex_count()
                                               : trace.levels.front().graph.vertex_count()))
        throw std::logic_error("contraction recursion exceeded its depth cap");

    trace.levels.push_back(ProcedureLevel{g, {}, {}, {}, {}, {}, {}});
    std::size_t li = trace.levels.size() - 1;

    FactorSearchOptions fopts = opts.factor;
    fopts.deadline = opts.deadline;
    fopts.relax_preconditions = depth > 0;
    fopts.assume_vertex_transitive = opts.assume_vertex_transitive;
    FactorSearchResult factor = uniform_odd_two_factor(g, fopts);
    trace.levels[li].factor = factor;

    if (factor.verdict == SearchVerdict::unknown)
        return {std::nullopt, ProcedureOutcome::budget_exhausted};
    if (factor.verdict == SearchVerdict::absent)
        return {std::nullopt, ProcedureOutcome::factor_missing};

    const UniformOddCertificate& cert = *factor.certificate;
    if (cert.cycle_count == 1) return {cert.factor.cycles.front(), {}};

    std::vector<VertexSet> blocks;
    blocks.reserve(cert.factor.cycles.size());
    for (const auto& cy : cert.factor.cycles) blocks.emplace_back(cy.vertices());
    Partition part(std::move(blocks), g.vertex_count());
    Graph q = quotient_by_partition(g, part);
    trace.levels[li].quotient = q;
    trace.levels[li].quotient_connected = is_connected(q);
    trace.levels[li].quotient_odd_order = q.vertex_count() % 2 == 1;
    try {
        trace.levels[li].quotient_vertex_transitive = is_vertex_transitive(q, opts.factor.symmetry);
    } catch (const capability_error&) {
        trace.levels[li].notes.push_back("quotient transitivity check hit capability bound");
    }
    auto note_flag = [&](const char* name, const std::optional<bool>& f) {
        if (f && !*f)
            trace.levels[li].notes.push_back(std::string("hypothesis violated: ") + name);
    };
    note_flag("quotient_connected", trace.levels[li].quotient_connected);
    note_flag("quotient_odd_order", trace.levels[li].quotient_odd_order);
    note_flag("quotient_vertex_transitive", trace.levels[li].quotient_vertex_transitive);

    ProcedureOptions deeper = opts;
    deeper.assume_vertex_transitive = false;
    LevelResult sub = run_level(q, depth + 1, deeper, trace);

    std::optional<Cycle> qc;
    if (sub.cycle) {
        qc = sub.cycle;
    } else {
        if (sub.fail == ProcedureOutcome::budget_exhausted) return sub;
        // the recursion could not handle the quotient; fall back to the exact
        // search so a lift can still be attempted at this level
        HamiltonOptions ho;
        ho.max_vertices = 64;
        ho.deadline = opts.deadline;
        HamiltonResult hr = hamilton_cycle(q, ho);
        if (hr.verdict == SearchVerdict::unknown)
            return {std::nullopt, ProcedureOutcome::budget_exhausted};
        if (hr.verdict == SearchVerdict::absent) return sub;
        qc = hr.cycle;
        trace.levels[li].notes.push_back("quotient cycle from exact search fallback");
    }

    bool lift_timeout = false;
    auto lifted = lift_hamilton_cycle(g, cert, qc, LiftOptions{opts.deadline}, &lift_timeout);
    if (!lifted && !lift_timeout && q.vertex_count() <= 14) {
        // this quotient cycle does not lift; some other hamilton cycle of the
        // quotient still might, so sweep them all before giving up
        bool expired = false;
        for_each_hamilton_cycle(q, opts.deadline, expired, [&](const Cycle& cand) {
            bool to = false;
            lifted = lift_hamilton_cycle(g, cert, cand, LiftOptions{opts.deadline}, &to);
            if (to) expired = true;
            return lifted.has_value() || to;
        });
        if (lifted)
            trace.levels[li].notes.push_back("lift required an alternate quotient cycle");
        else if (expired)
            lift_timeout = true;
        else
            trace.levels[li].notes.push_back(
                "no hamilton cycle of the quotient lifts through this factor");
    }
    if (!lifted)
        return {std::nullopt, lift_timeout ? ProcedureOutcome::budget_exhausted
                                           : ProcedureOutcome::lift_failed};
    return {std::move(lifted), {}};
}

} // namespace procedure_detail

// The contract-and-recurse construction: find a uniform odd 2-factor, stop if
// it is a single cycle, otherwise contract each factor cycle to a vertex,
// audit the quotient (connected? odd? vertex-transitive?), solve the quotient
// by recursion (falling back to the exact search when the recursion fails for
// a structural reason), and lift the quotient cycle back through the splice.
// Hypothesis failures are recorded and never stop the run.
inline ProcedureTrace run_contraction_procedure(const Graph& g, const ProcedureOptions& opts = {}) {
    ProcedureTrace trace;
    procedure_detail::LevelResult top = procedure_detail::run_level(g, 0, opts, trace);
    if (top.cycle) {
        trace.outcome = ProcedureOutcome::hamilton_cycle_found;
        trace.cycle = std::move(top.cycle);
        if (trace.cycle->length() != g.vertex_count() || !is_cycle_of(g, *trace.cycle))
            throw std::logic_error("procedure produced an invalid hamilton cycle");
    } else {
        trace.outcome = top.fail;
    }
    return trace;
}

// A Hamilton path is read off a Hamilton cycle by dropping the wrap-around
// edge from the last vertex back to the first.
inline std::vector<int> hamilton_path_from_cycle(const Cycle& c) { return c.vertices(); }

} // namespace vtham
