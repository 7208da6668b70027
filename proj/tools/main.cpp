#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vtham/census.hpp"
#include "vtham/families.hpp"
#include "vtham/graph6.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : split_commas(s)) out.push_back(std::stoi(tok));
    return out;
}

int run_check(const std::string& path, const vtham::CensusConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return 1;
    }
    std::string line;
    int lineno = 0, bad = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::string id = path + ":" + std::to_string(lineno);
        try {
            vtham::Graph g = vtham::parse_graph6(line);
            vtham::CensusRecord r = vtham::check_graph(id, g, cfg);
            std::cout << vtham::record_to_json(r).dump() << "\n";
        } catch (const vtham::parse_error& e) {
            std::cerr << id << ": " << e.what() << "\n";
            ++bad;
        }
    }
    return bad == 0 ? 0 : 1;
}

vtham::GroupTable load_group(const std::string& name_or_path) {
    for (const auto& [name, table] : vtham::census_groups())
        if (name == name_or_path) return table;
    std::ifstream in(name_or_path);
    if (!in) throw std::runtime_error("unknown group name and unreadable file: " + name_or_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return vtham::parse_group_table(buf.str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive hamiltonicity search for odd-order vertex-transitive graphs"};
    app.require_subcommand(1);

    vtham::CensusConfig cfg;
    std::string families = "circulant,cayley,kneser,complement";
    std::string out_dir = "census-out";
    long long lemma_ms = cfg.lemma_budget.count();
    long long procedure_ms = cfg.procedure_budget.count();
    long long oracle_ms = cfg.oracle_budget.count();

    auto* census = app.add_subcommand("census", "generate the census and write report files");
    census->add_option("--families", families, "comma-separated families to generate")
        ->capture_default_str();
    census->add_option("--max-n", cfg.max_n, "largest vertex count to keep")
        ->capture_default_str();
    census->add_option("--lemma-budget-ms", lemma_ms, "2-factor stage budget per graph")
        ->capture_default_str();
    census->add_option("--procedure-budget-ms", procedure_ms, "contraction stage budget per graph")
        ->capture_default_str();
    census->add_option("--oracle-budget-ms", oracle_ms, "exact-search stage budget per graph")
        ->capture_default_str();
    census->add_option("--out-dir", out_dir, "directory for report files")
        ->capture_default_str();
    census->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();

    std::string check_file;
    auto* check = app.add_subcommand("check", "run all stages on graph6 lines from a file");
    check->add_option("file", check_file, "path to a graph6 file")->required();

    std::string gen_family, gen_a, gen_b;
    bool gen_complement = false;
    auto* gen = app.add_subcommand("gen", "emit a generated graph as graph6");
    gen->add_option("family", gen_family, "circulant | cayley | kneser")->required();
    gen->add_option("arg1", gen_a, "circulant: n; cayley: group name or table file; kneser: n")
        ->required();
    gen->add_option("arg2", gen_b,
                    "circulant: comma-separated steps; cayley: comma-separated connection "
                    "elements; kneser: k")
        ->required();
    gen->add_flag("--complement", gen_complement, "emit the complement instead");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*census) {
            cfg.families = split_commas(families);
            cfg.lemma_budget = std::chrono::milliseconds(lemma_ms);
            cfg.procedure_budget = std::chrono::milliseconds(procedure_ms);
            cfg.oracle_budget = std::chrono::milliseconds(oracle_ms);
            vtham::CensusReport rep = vtham::run_census(cfg);
            vtham::write_census_outputs(rep, out_dir);
            std::cout << rep.records.size() << " records, " << rep.filtered.size()
                      << " filtered; reports in " << out_dir << "\n";
            return 0;
        }
        if (*check) return run_check(check_file, cfg);
        if (*gen) {
            vtham::Graph g = [&] {
                if (gen_family == "circulant")
                    return vtham::gen_circulant(std::stoi(gen_a), parse_int_list(gen_b));
                if (gen_family == "cayley")
                    return vtham::gen_cayley(load_group(gen_a), parse_int_list(gen_b));
                if (gen_family == "kneser")
                    return vtham::gen_kneser(std::stoi(gen_a), std::stoi(gen_b));
                throw std::runtime_error("unknown family: " + gen_family);
            }();
            if (gen_complement) g = vtham::complement(g);
            std::cout << vtham::to_graph6(g) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
