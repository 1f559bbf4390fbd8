#include "ofd/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ofd/cleaning.hpp"
#include "ofd/error.hpp"
#include "ofd/ontology.hpp"
#include "ofd/relation.hpp"
#include "ofd/serialize.hpp"

namespace ofd::cli {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

void RunConfig::validate() const {
    if (input.empty()) throw ConfigError("--input is required");
    if (ontology.empty()) throw ConfigError("--ontology is required");
    const bool wants_theta = mode != Mode::syn;
    if (wants_theta && !theta) throw ConfigError("--theta is required for inheritance modes");
    if (!wants_theta && theta) throw ConfigError("--theta only applies to inheritance modes");
    if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("--tau must lie in (0, 1]");
    if (inject_errors && !(*inject_errors >= 0.0 && *inject_errors < 1.0))
        throw ConfigError("--inject-errors must lie in [0, 1)");
    if (inject_log && !inject_errors) throw ConfigError("--inject-log requires --inject-errors");
    if (violations && !report_violations) throw ConfigError("--violations requires --report-violations");
}

std::vector<OfdKind> RunConfig::kinds() const {
    switch (mode) {
        case Mode::syn: return {OfdKind::synonym()};
        case Mode::inh: return {OfdKind::inheritance(*theta)};
        case Mode::both: return {OfdKind::synonym(), OfdKind::inheritance(*theta)};
    }
    return {};
}

namespace {

struct Artifact {
    std::optional<std::filesystem::path> path;
    std::string content;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + path.string() + " for writing");
    f << content;
    f.close();
    if (!f) throw Error("failed writing " + path.string());
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }

    try {
        Relation r = load_relation(cfg.input, {cfg.delimiter, cfg.header});
        const Ontology o = Ontology::load_file(cfg.ontology, {cfg.case_insensitive});

        std::vector<Artifact> artifacts;
        if (cfg.inject_errors) {
            auto injected = inject_errors(r, o, {}, *cfg.inject_errors, cfg.seed);
            if (cfg.inject_log) artifacts.push_back({cfg.inject_log, dump(to_json(injected.log, r.schema()))});
            r = std::move(injected.relation);
        }

        std::vector<Ofd> ofds;
        ojson stats = ojson::array();
        for (const OfdKind kind : cfg.kinds()) {
            DiscoveryConfig dc;
            dc.kind = kind;
            dc.tau = cfg.tau;
            dc.max_level = cfg.max_level;
            dc.optimizations = cfg.optimizations;
            dc.threads = cfg.threads;
            auto result = discover(r, o, dc);
            stats.push_back(stats_to_json(result, kind));
            ofds.insert(ofds.end(), result.ofds.begin(), result.ofds.end());
        }

        const bool as_json = cfg.format == Format::json;
        artifacts.push_back({cfg.output, as_json ? dump(ofds_to_json(r.schema(), ofds)) : ofds_to_text(r.schema(), ofds)});
        if (cfg.stats) artifacts.push_back({cfg.stats, dump(stats)});
        if (cfg.report_violations) {
            const auto report = report_violations(r, o, ofds);
            std::optional<std::filesystem::path> path = cfg.violations;
            if (!path && cfg.output) path = cfg.output->string() + (as_json ? ".violations.json" : ".violations.txt");
            artifacts.push_back({path, as_json ? dump(to_json(report)) : to_text(report)});
        }

        for (const auto& a : artifacts)
            if (a.path) write_file(*a.path, a.content);
        for (const auto& a : artifacts)
            if (!a.path) out << a.content;
        out.flush();
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Discover ontology functional dependencies in a CSV table."};
    app.name("fastofd");

    std::string input, ontology, output, stats, violations, inject_log;
    std::string mode = "syn", format = "json";
    std::optional<std::uint32_t> theta;
    std::optional<std::size_t> max_level;
    std::optional<double> inject;
    bool no_opt2 = false, no_opt3 = false, no_opt4 = false, no_strip = false, no_header = false;
    std::string delimiter = ",";

    app.add_option("--input", input, "CSV table")->required();
    app.add_option("--ontology", ontology, "Ontology JSON")->required();
    app.add_option("--mode", mode, "Dependency kind")->check(CLI::IsMember({"syn", "inh", "both"}));
    app.add_option("--theta", theta, "Ancestor distance for inheritance dependencies");
    app.add_option("--tau", cfg.tau, "Minimum support in (0, 1]");
    app.add_option("--max-level", max_level, "Largest antecedent size");
    app.add_option("--output", output, "Dependency output file (default: standard output)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--stats", stats, "Per-level statistics file");
    app.add_flag("--no-opt2", no_opt2, "Keep found consequents in candidate sets");
    app.add_flag("--no-opt3", no_opt3, "Verify superkey antecedents");
    app.add_flag("--no-opt4", no_opt4, "Disable the equal-value fast path");
    app.add_flag("--no-strip", no_strip, "Use full partitions");
    app.add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
    app.add_option("--delimiter", delimiter, "CSV field delimiter");
    app.add_flag("--no-header", no_header, "First CSV row is data; attributes are named A1..An");
    app.add_flag("--case-insensitive", cfg.case_insensitive, "ASCII case-insensitive value matching");
    app.add_flag("--report-violations", cfg.report_violations, "Write the violation report");
    app.add_option("--violations", violations, "Violation report file");
    app.add_option("--inject-errors", inject, "Fraction of cells to perturb before discovery");
    app.add_option("--seed", cfg.seed, "Seed for --inject-errors");
    app.add_option("--inject-log", inject_log, "Log of injected changes");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }

    if (delimiter.size() != 1) {
        err << "error: --delimiter must be a single character\n";
        return exit_config;
    }
    cfg.input = input;
    cfg.ontology = ontology;
    cfg.mode = mode == "syn" ? Mode::syn : mode == "inh" ? Mode::inh : Mode::both;
    cfg.theta = theta;
    cfg.max_level = max_level;
    if (!output.empty()) cfg.output = output;
    cfg.format = format == "json" ? Format::json : Format::text;
    if (!stats.empty()) cfg.stats = stats;
    cfg.optimizations = {!no_opt2, !no_opt3, !no_opt4, !no_strip};
    cfg.delimiter = delimiter[0];
    cfg.header = !no_header;
    if (!violations.empty()) cfg.violations = violations;
    cfg.inject_errors = inject;
    if (!inject_log.empty()) cfg.inject_log = inject_log;
    return run(cfg, out, err);
}

}  // namespace ofd::cli
