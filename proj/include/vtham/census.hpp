#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vtham/factorization.hpp"
#include "vtham/families.hpp"
#include "vtham/graph.hpp"
#include "vtham/graph6.hpp"
#include "vtham/hamilton.hpp"
#include "vtham/procedure.hpp"
#include "vtham/symmetry.hpp"

namespace vtham {

struct GraphSpec {
    std::string id;
    std::string family; // circulant | cayley | kneser | complement | file
    Graph graph;
};

struct CensusConfig {
    std::vector<std::string> families{"circulant", "cayley", "kneser", "complement"};
    int max_n = 21;
    std::chrono::milliseconds lemma_budget{2000};
    std::chrono::milliseconds procedure_budget{5000};
    std::chrono::milliseconds oracle_budget{10000};
    int jobs = 1;
};

struct LevelFlagsRecord {
    int level = 0;
    std::optional<bool> quotient_connected;
    std::optional<bool> quotient_odd_order;
    std::optional<bool> quotient_vertex_transitive;
};

struct CensusRecord {
    std::string id;
    std::string family;
    std::string graph6;
    int n = 0;
    int degree = 0;
    bool connected = false;
    bool vertex_transitive = false;
    bool odd_order = false;
    bool eligible = false; // all three preconditions hold; stages below ran

    SearchVerdict lemma = SearchVerdict::unknown;
    int cycle_length = 0; // populated when lemma == present
    int cycle_count = 0;
    std::vector<std::string> lemma_notes;

    ProcedureOutcome procedure_outcome = ProcedureOutcome::budget_exhausted;
    std::optional<bool> procedure_cycle_valid; // set when a cycle was produced
    std::vector<LevelFlagsRecord> levels;      // one entry per contracted level
    std::vector<std::string> procedure_notes;

    SearchVerdict oracle = SearchVerdict::unknown;
    std::vector<std::string> oracle_notes;

    // wall times, reported in a separate sidecar so the main outputs stay
    // byte-identical across runs
    long long lemma_ms = 0, procedure_ms = 0, oracle_ms = 0;
};

struct CensusReport {
    std::vector<CensusRecord> records;
    std::vector<std::string> filtered; // "<id>\t<reason>" per excluded spec
};

namespace census_detail {

inline std::string pad2(int n) {
    return (n < 10 ? "0" : "") + std::to_string(n);
}

inline std::string join_ints(const std::vector<int>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? "." : "") + std::to_string(xs[i]);
    return out;
}

} // namespace census_detail

// The bundled group catalogue: cyclic groups past the circulant range plus
// the two non-cyclic groups of odd order <= 21.
inline const std::vector<std::pair<std::string, GroupTable>>& census_groups() {
    static const std::vector<std::pair<std::string, GroupTable>> groups = [] {
        std::vector<std::pair<std::string, GroupTable>> g;
        g.emplace_back("z17", cyclic_group(17));
        g.emplace_back("z19", cyclic_group(19));
        g.emplace_back("z21", cyclic_group(21));
        g.emplace_back("z3x3", direct_product(cyclic_group(3), cyclic_group(3)));
        g.emplace_back("z3x5", direct_product(cyclic_group(3), cyclic_group(5)));
        g.emplace_back("f21", frobenius21());
        return g;
    }();
    return groups;
}

// Default scope: every circulant on odd n <= 15 (all nonempty step sets),
// Cayley graphs of the catalogue groups over unions of one or two
// inverse-pair classes plus the full connection set, small Kneser graphs,
// and complements of everything generated.
inline std::vector<GraphSpec> default_census_specs(const CensusConfig& cfg) {
    auto wants = [&](const char* f) {
        for (const auto& s : cfg.families)
            if (s == f) return true;
        return false;
    };
    std::vector<GraphSpec> base;

    if (wants("circulant")) {
        for (int n = 3; n <= std::min(cfg.max_n, 15); n += 2) {
            int half = n / 2;
            for (unsigned mask = 1; mask < (1u << half); ++mask) {
                std::vector<int> steps;
                for (int d = 1; d <= half; ++d)
                    if (mask & (1u << (d - 1))) steps.push_back(d);
                base.push_back({"circulant-n" + census_detail::pad2(n) + "-s" +
                                    census_detail::join_ints(steps),
                                "circulant", gen_circulant(n, steps)});
            }
        }
    }

    if (wants("cayley")) {
        for (const auto& [name, table] : census_groups()) {
            if (table.size() > cfg.max_n) continue;
            std::vector<std::vector<int>> classes;
            std::vector<char> used(table.size(), 0);
            for (int s = 0; s < table.size(); ++s) {
                if (s == table.identity() || used[s]) continue;
                int inv = table.inverse(s);
                used[s] = used[inv] = 1;
                classes.push_back(s == inv ? std::vector<int>{s}
                                           : std::vector<int>{s, inv});
            }
            auto add = [&](const std::vector<int>& class_ids) {
                std::vector<int> conn;
                for (int ci : class_ids)
                    conn.insert(conn.end(), classes[ci].begin(), classes[ci].end());
                std::sort(conn.begin(), conn.end());
                base.push_back({"cayley-" + name + "-c" + census_detail::join_ints(conn),
                                "cayley", gen_cayley(table, conn)});
            };
            int nc = static_cast<int>(classes.size());
            for (int i = 0; i < nc; ++i) add({i});
            for (int i = 0; i < nc; ++i)
                for (int j = i + 1; j < nc; ++j) add({i, j});
            if (nc > 2) {
                std::vector<int> all(nc);
                std::iota(all.begin(), all.end(), 0);
                add(all);
            }
        }
    }

    if (wants("kneser")) {
        for (auto [n, k] : {std::pair{5, 1}, {5, 2}, {7, 2}}) {
            Graph g = gen_kneser(n, k);
            if (g.vertex_count() > cfg.max_n) continue;
            base.push_back({"kneser-" + std::to_string(n) + "-" + std::to_string(k),
                            "kneser", g});
        }
    }

    std::vector<GraphSpec> specs = base;
    if (wants("complement")) {
        for (const auto& s : base)
            specs.push_back({"complement(" + s.id + ")", "complement", complement(s.graph)});
    }
    return specs;
}

// Runs the three stages on an eligible graph under the configured budgets.
inline CensusRecord run_stages(std::string id, std::string family, const Graph& g,
                               std::string g6, const CensusConfig& cfg) {
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0)
            .count();
    };

    CensusRecord r;
    r.id = std::move(id);
    r.family = std::move(family);
    r.graph6 = std::move(g6);
    r.n = g.vertex_count();
    r.degree = g.degree(0);
    r.connected = r.vertex_transitive = r.odd_order = r.eligible = true;

    {
        auto t0 = clock::now();
        FactorSearchOptions fo;
        fo.deadline = t0 + cfg.lemma_budget;
        fo.group_budget = std::min(fo.group_budget, cfg.lemma_budget);
        fo.assume_vertex_transitive = true;
        FactorSearchResult lem = uniform_odd_two_factor(g, fo);
        r.lemma = lem.verdict;
        if (lem.certificate) {
            r.cycle_length = lem.certificate->cycle_length;
            r.cycle_count = lem.certificate->cycle_count;
        }
        r.lemma_notes = std::move(lem.notes);
        r.lemma_ms = ms_since(t0);
    }

    {
        auto t0 = clock::now();
        ProcedureOptions po;
        po.deadline = t0 + cfg.procedure_budget;
        po.factor.group_budget = std::min(po.factor.group_budget, cfg.procedure_budget);
        po.assume_vertex_transitive = true;
        ProcedureTrace trace = run_contraction_procedure(g, po);
        r.procedure_outcome = trace.outcome;
        if (trace.cycle)
            r.procedure_cycle_valid =
                trace.cycle->length() == g.vertex_count() && is_cycle_of(g, *trace.cycle);
        for (std::size_t li = 0; li < trace.levels.size(); ++li) {
            const ProcedureLevel& lv = trace.levels[li];
            if (lv.quotient)
                r.levels.push_back({static_cast<int>(li), lv.quotient_connected,
                                    lv.quotient_odd_order, lv.quotient_vertex_transitive});
            for (const auto& note : lv.notes)
                r.procedure_notes.push_back("level " + std::to_string(li) + ": " + note);
        }
        r.procedure_ms = ms_since(t0);
    }

    {
        auto t0 = clock::now();
        HamiltonOptions ho;
        ho.deadline = t0 + cfg.oracle_budget;
        try {
            r.oracle = hamilton_cycle(g, ho).verdict;
        } catch (const capability_error& e) {
            r.oracle = SearchVerdict::unknown;
            r.oracle_notes.push_back(std::string("capability: ") + e.what());
        }
        r.oracle_ms = ms_since(t0);
    }
    return r;
}

// Generates the configured specs, deduplicates by graph6 string, filters to
// connected vertex-transitive odd-order graphs (logging each exclusion), runs
// the stages, and returns records sorted by spec id.
inline CensusReport run_census(const CensusConfig& cfg) {
    CensusReport rep;
    std::map<std::string, std::string> seen; // graph6 -> first spec id
    struct Item {
        std::string id, family, g6;
        Graph g;
    };
    std::vector<Item> eligible;
    for (auto& s : default_census_specs(cfg)) {
        std::string g6 = to_graph6(s.graph);
        auto [it, fresh] = seen.emplace(g6, s.id);
        if (!fresh) {
            rep.filtered.push_back(s.id + "\tduplicate of " + it->second);
            continue;
        }
        if (s.graph.vertex_count() % 2 == 0) {
            rep.filtered.push_back(s.id + "\teven order");
            continue;
        }
        if (!is_connected(s.graph)) {
            rep.filtered.push_back(s.id + "\tdisconnected");
            continue;
        }
        bool vt = false;
        try {
            vt = is_vertex_transitive(s.graph);
        } catch (const capability_error&) {
            rep.filtered.push_back(s.id + "\ttransitivity check exceeded search bound");
            continue;
        }
        if (!vt) {
            rep.filtered.push_back(s.id + "\tnot vertex-transitive");
            continue;
        }
        eligible.push_back({std::move(s.id), std::move(s.family), std::move(g6), s.graph});
    }

    rep.records.resize(eligible.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < eligible.size();) {
            const Item& it = eligible[i];
            rep.records[i] = run_stages(it.id, it.family, it.g, it.g6, cfg);
        }
    };
    int jobs = std::max(1, cfg.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    std::sort(rep.records.begin(), rep.records.end(),
              [](const CensusRecord& a, const CensusRecord& b) { return a.id < b.id; });
    std::sort(rep.filtered.begin(), rep.filtered.end());
    return rep;
}

// Stage runner for arbitrary input graphs (the check command): eligibility is
// evaluated rather than assumed, the structured stages run only when it
// holds, and the exact search runs whenever it can.
inline CensusRecord check_graph(std::string id, const Graph& g, const CensusConfig& cfg) {
    CensusRecord r;
    r.odd_order = g.vertex_count() % 2 == 1;
    r.connected = is_connected(g);
    bool vt_known = true;
    try {
        r.vertex_transitive = is_vertex_transitive(g);
    } catch (const capability_error& e) {
        vt_known = false;
        r.oracle_notes.push_back(std::string("transitivity: ") + e.what());
    }
    if (r.odd_order && r.connected && vt_known && r.vertex_transitive) {
        CensusRecord staged = run_stages(id, "file", g, to_graph6(g), cfg);
        staged.connected = r.connected;
        staged.vertex_transitive = r.vertex_transitive;
        staged.odd_order = r.odd_order;
        return staged;
    }
    r.id = std::move(id);
    r.family = "file";
    r.graph6 = to_graph6(g);
    r.n = g.vertex_count();
    r.degree = g.vertex_count() > 0 ? g.degree(0) : 0;
    r.eligible = false;
    if (g.vertex_count() >= 3) {
        auto t0 = std::chrono::steady_clock::now();
        HamiltonOptions ho;
        ho.deadline = t0 + cfg.oracle_budget;
        try {
            r.oracle = hamilton_cycle(g, ho).verdict;
        } catch (const capability_error& e) {
            r.oracle = SearchVerdict::unknown;
            r.oracle_notes.push_back(std::string("capability: ") + e.what());
        }
        r.oracle_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    } else {
        r.oracle = SearchVerdict::unknown;
        r.oracle_notes.push_back("graph too small for a cycle");
    }
    return r;
}

inline nlohmann::ordered_json record_to_json(const CensusRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["family"] = r.family;
    j["graph6"] = r.graph6;
    j["n"] = r.n;
    j["degree"] = r.degree;
    j["connected"] = r.connected;
    j["vertex_transitive"] = r.vertex_transitive;
    j["odd_order"] = r.odd_order;
    j["eligible"] = r.eligible;
    if (r.eligible) {
        nlohmann::ordered_json lemma;
        lemma["verdict"] = to_string(r.lemma);
        if (r.lemma == SearchVerdict::present) {
            lemma["cycle_length"] = r.cycle_length;
            lemma["cycle_count"] = r.cycle_count;
        }
        lemma["notes"] = r.lemma_notes;
        j["lemma"] = std::move(lemma);

        nlohmann::ordered_json proc;
        proc["outcome"] = to_string(r.procedure_outcome);
        if (r.procedure_cycle_valid) proc["cycle_valid"] = *r.procedure_cycle_valid;
        nlohmann::ordered_json levels = nlohmann::ordered_json::array();
        for (const auto& lv : r.levels) {
            nlohmann::ordered_json l;
            l["level"] = lv.level;
            auto flag = [](const std::optional<bool>& f) {
                return f ? nlohmann::ordered_json(*f) : nlohmann::ordered_json(nullptr);
            };
            l["quotient_connected"] = flag(lv.quotient_connected);
            l["quotient_odd_order"] = flag(lv.quotient_odd_order);
            l["quotient_vertex_transitive"] = flag(lv.quotient_vertex_transitive);
            levels.push_back(std::move(l));
        }
        proc["levels"] = std::move(levels);
        if (!r.procedure_notes.empty()) proc["notes"] = r.procedure_notes;
        j["procedure"] = std::move(proc);
    } else {
        j["lemma"] = nullptr;
        j["procedure"] = nullptr;
    }
    j["oracle"] = to_string(r.oracle);
    if (!r.oracle_notes.empty()) j["oracle_notes"] = r.oracle_notes;
    return j;
}

namespace census_detail {

inline char flag_char(const std::optional<bool>& f) { return f ? (*f ? 't' : 'f') : 'u'; }

inline std::string level_flags(const CensusRecord& r) {
    std::string out;
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
        if (i) out += '|';
        out += flag_char(r.levels[i].quotient_connected);
        out += flag_char(r.levels[i].quotient_odd_order);
        out += flag_char(r.levels[i].quotient_vertex_transitive);
    }
    return out;
}

} // namespace census_detail

inline std::string summary_csv_line(const CensusRecord& r) {
    std::string lemma = to_string(r.lemma);
    return r.id + "," + r.family + "," + std::to_string(r.n) + "," +
           std::to_string(r.degree) + "," + lemma + "," + std::to_string(r.cycle_length) +
           "," + std::to_string(r.cycle_count) + "," + to_string(r.procedure_outcome) +
           "," + to_string(r.oracle) + "," + census_detail::level_flags(r);
}

inline constexpr const char* kSummaryHeader =
    "id,family,n,degree,lemma,cycle_length,cycle_count,procedure,oracle,quotient_flags";

// records.jsonl + summary.csv are deterministic for a fixed config; wall
// times go to timings.csv, which is expected to differ between runs.
inline void write_census_outputs(const CensusReport& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto open = [&](const char* name) {
        std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
        if (!f) throw std::runtime_error(std::string("cannot write ") + name + " in " + out_dir);
        return f;
    };
    {
        auto f = open("records.jsonl");
        for (const auto& r : rep.records) f << record_to_json(r).dump() << "\n";
    }
    {
        auto f = open("summary.csv");
        f << kSummaryHeader << "\n";
        for (const auto& r : rep.records) f << summary_csv_line(r) << "\n";
    }
    {
        auto f = open("filtered.log");
        for (const auto& line : rep.filtered) f << line << "\n";
    }
    {
        auto f = open("timings.csv");
        f << "id,lemma_ms,procedure_ms,oracle_ms\n";
        for (const auto& r : rep.records)
            f << r.id << "," << r.lemma_ms << "," << r.procedure_ms << "," << r.oracle_ms
              << "\n";
    }
}

} // namespace vtham
