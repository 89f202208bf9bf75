#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kt/bf.hpp"
#include "kt/model.hpp"
#include "kt/version.hpp"

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_json(const std::string& path, const kt::Report& report) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    out << kt::render_json(report);
}

// Exit code contract: 0 on success (inconclusive entries only warn),
// 1 on any failed check, 2 on usage/parse errors.
int finish(const kt::Report& report, const std::string& json_path, bool print_text = true) {
    write_json(json_path, report);
    if (print_text) std::cout << kt::render_text(report);
    int inconclusive = report.count(kt::CheckStatus::inconclusive);
    if (inconclusive > 0)
        std::cerr << "warning: " << inconclusive << " check(s) inconclusive within bounds\n";
    return report.ok() ? 0 : 1;
}

int parse_failure(const kt::Diagnostic& diag, const std::string& path) {
    std::cerr << path << ":" << diag.render() << "\n";
    return 2;
}

struct LoadedModel {
    kt::ModelFile file;
    kt::KTComplex complex;
    std::string hash;
};

std::optional<LoadedModel> load_model(const std::string& path, int& exit_code) {
    auto text = read_file(path);
    if (!text) {
        exit_code = fail_usage("cannot read " + path);
        return std::nullopt;
    }
    kt::ParseResult parsed = kt::parse_model(*text);
    if (parsed.error) {
        exit_code = parse_failure(*parsed.error, path);
        return std::nullopt;
    }
    kt::BuildResult built = kt::build_model(*parsed.model);
    if (built.error) {
        exit_code = parse_failure(*built.error, path);
        return std::nullopt;
    }
    std::string hash = kt::model_hash(*parsed.model);
    return LoadedModel{std::move(*parsed.model), std::move(*built.complex), std::move(hash)};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Antifield Koszul-Tate tower construction and verification"};
    app.set_version_flag("--version", kt::kToolVersion);
    app.require_subcommand(1);

    std::string json_path;
    app.add_option("--json", json_path, "write the JSON report to this path");

    std::string el_file, check_file, search_file;
    auto* el_cmd = app.add_subcommand("el", "print the Euler-Lagrange components of a model");
    el_cmd->add_option("file", el_file, "model file")->required();

    auto* check_cmd = app.add_subcommand("check", "verify nilpotency of the declared tower");
    check_cmd->add_option("file", check_file, "model file")->required();

    int search_jet = 1, search_degree = 0;
    auto* search_cmd = app.add_subcommand("search", "bounded Noether-identity search");
    search_cmd->add_option("file", search_file, "model file")->required();
    search_cmd->add_option("--jet-order", search_jet, "max jet order of the ansatz")
        ->check(CLI::NonNegativeNumber);
    search_cmd->add_option("--degree", search_degree, "max coefficient degree")
        ->check(CLI::NonNegativeNumber);

    int bf_dim = 2, bf_jet = -1, bf_degree = -1, bf_trials = 5;
    unsigned long long bf_seed = 1;
    auto* bf_cmd = app.add_subcommand("bf", "build and verify the topological BF tower");
    bf_cmd->add_option("--dim", bf_dim, "base dimension (2.." + std::to_string(kt::kBFMaxDim) + ")")
        ->required()
        ->check(CLI::Range(2, kt::kBFMaxDim));
    bf_cmd->add_option("--jet-order", bf_jet, "probe jet order (default dimension-dependent)");
    bf_cmd->add_option("--degree", bf_degree, "probe degree bound (default 2)");
    bf_cmd->add_option("--trials", bf_trials, "random boundary trials per probe");
    bf_cmd->add_option("--seed", bf_seed, "probe seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (el_cmd->parsed()) {
        int code = 2;
        auto loaded = load_model(el_file, code);
        if (!loaded) return code;
        kt::Report report{kt::kToolVersion, loaded->hash, {}};
        const auto& table = loaded->complex.table();
        std::ostringstream text;
        for (int f : loaded->complex.base_fields())
            for (const auto& comp : table.components(f)) {
                Timer timer;
                const kt::GradedPoly& e = loaded->complex.el().at({f, comp});
                std::string name = table.component_name(f, comp);
                std::string value = e.to_string(table);
                text << "E[" << name << "] = " << value << "\n";
                kt::CheckEntry entry;
                entry.name = "el/" + name;
                entry.data = {value};
                entry.timing_ms = timer.ms();
                report.entries.push_back(std::move(entry));
            }
        write_json(json_path, report);
        std::cout << text.str();
        return 0;
    }

    if (check_cmd->parsed()) {
        int code = 2;
        auto loaded = load_model(check_file, code);
        if (!loaded) return code;
        kt::Report report{kt::kToolVersion, loaded->hash, {}};
        kt::StageRegistrationResult reg =
            kt::register_model_stages(loaded->complex, loaded->file);
        if (reg.error) return parse_failure(*reg.error, check_file);
        if (reg.failure) {
            report.entries.push_back(*reg.failure);
            return finish(report, json_path);
        }
        for (int k = 0; k < reg.complex.stage_count(); ++k) {
            kt::CheckEntry entry;
            entry.name = "stage_operators/" + std::to_string(k);
            for (const auto& op : reg.complex.stage(k))
                entry.data.push_back(op.display_name() + " = " +
                                     op.expression.to_string(reg.complex.table()));
            report.entries.push_back(std::move(entry));
        }
        Timer timer;
        auto nil = kt::check_nilpotency(reg.complex);
        double each = nil.empty() ? 0.0 : timer.ms() / static_cast<double>(nil.size());
        for (const auto& item : nil) {
            kt::CheckEntry entry;
            entry.name = "nilpotency/" + item.generator;
            entry.status = item.pass ? kt::CheckStatus::pass : kt::CheckStatus::fail;
            if (!item.pass) entry.residual = item.residual.to_string(reg.complex.table());
            entry.timing_ms = each;
            report.entries.push_back(std::move(entry));
        }
        return finish(report, json_path);
    }

    if (search_cmd->parsed()) {
        int code = 2;
        auto loaded = load_model(search_file, code);
        if (!loaded) return code;
        kt::Report report{kt::kToolVersion, loaded->hash, {}};
        Timer timer;
        kt::NoetherBasis basis = kt::noether_search(loaded->complex, search_jet, search_degree);
        kt::CheckEntry entry;
        entry.name = "noether_search";
        entry.status = kt::CheckStatus::pass;
        entry.note = "dim=" + std::to_string(basis.basis.size()) +
                     " cycle_dim=" + std::to_string(basis.cycle_dim) +
                     " trivial_dim=" + std::to_string(basis.trivial_dim);
        for (const auto& d : basis.basis)
            entry.data.push_back(d.body.to_string(loaded->complex.table()));
        entry.timing_ms = timer.ms();
        report.entries.push_back(std::move(entry));
        return finish(report, json_path);
    }

    // bf
    kt::Report report{kt::kToolVersion, kt::fnv1a_hex("bf:" + std::to_string(bf_dim)), {}};
    kt::BFModel model = kt::build_bf(bf_dim);
    kt::BFVerifyOptions options;
    if (bf_jet >= 0) options.probe_jet_bound = bf_jet;
    if (bf_degree >= 0) options.probe_degree_bound = bf_degree;
    options.probe_trials = bf_trials;
    options.seed = bf_seed;
    report.entries = kt::verify_bf(model, options);
    return finish(report, json_path);
}
