// Batch runner: reads a gamble-pair file plus scheme/policy configs, runs
// the decision-structure engine on every pair and renders the reports.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dstruct/report.hpp"
#include "dstruct/substitution.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ordinal decision-structure engine for risky choice"};

    std::string batch_path, scheme_path, policy_path;
    std::uint64_t seed = 0;
    std::string format = "table";
    int max_tree_depth = 4;

    app.add_option("--batch", batch_path, "gamble-pair batch file (JSON)")->required();
    app.add_option("--scheme", scheme_path, "substitution scheme file (JSON)")->required();
    app.add_option("--policy", policy_path, "reduction policy file (JSON)");
    app.add_option("--seed", seed, "seed for path sampling (default 0)");
    app.add_option("--format", format, "output format: table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--max-tree-depth", max_tree_depth, "safety cap on reduction depth");

    CLI11_PARSE(app, argc, argv);

    try {
        const dstruct::SubstitutionScheme scheme = dstruct::load_scheme(scheme_path);
        dstruct::ReductionPolicy policy;
        if (!policy_path.empty()) policy = dstruct::load_policy(policy_path);
        policy.max_tree_depth = max_tree_depth;
        policy.validate();

        const dstruct::BatchParseResult parsed = dstruct::parse_batch(batch_path);
        if (!parsed.ok()) {
            for (const auto& e : parsed.errors)
                std::cerr << "error [" << e.where << "]: " << e.message << "\n";
            return 1;
        }

        const auto reports = dstruct::run_batch(parsed.batch, scheme, policy, seed);
        dstruct::RenderFormat rf = dstruct::RenderFormat::Table;
        if (format == "csv") rf = dstruct::RenderFormat::Csv;
        if (format == "json") rf = dstruct::RenderFormat::Json;
        std::cout << dstruct::render(reports, rf);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
