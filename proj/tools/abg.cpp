#include "abg/error.hpp"
#include "abg/homology.hpp"
#include "abg/parallel.hpp"
#include "abg/pipeline.hpp"
#include "abg/scx.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

abg::ConstructionParams parse_params(const std::string& text)
{
    const auto a = text.find(',');
    const auto b = a == std::string::npos ? std::string::npos : text.find(',', a + 1);
    if (b == std::string::npos)
        abg::fail(abg::ErrorCode::InvalidInput, "--params expects K,L,GROUP");
    abg::ConstructionParams p;
    try {
        p.k = std::stoi(text.substr(0, a));
        p.L = std::stoi(text.substr(a + 1, b - a - 1));
    } catch (const std::exception&) {
        abg::fail(abg::ErrorCode::InvalidInput, "--params expects integers K and L");
    }
    p.group = abg::parse_group_kind(text.substr(b + 1));
    p.validate();
    return p;
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        abg::write_file(path, text);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Builds and checks the lattice-quotient hypersurfaces X(k, L)"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: ABG_THREADS or hardware)");

    int k = 1, L = 1, max_dim = -1;
    std::string group = "G", out_dir, file, params, checks, json_out, coeff = "Z";

    auto* build = app.add_subcommand("build", "Construct an instance and write .scx artifacts and report.json");
    build->add_option("--k", k)->required();
    build->add_option("--L", L)->required();
    build->add_option("--group", group)->required()->check(CLI::IsMember({"G", "Ghat"}));
    build->add_option("--out", out_dir)->required();
    build->add_option("--checks", checks, "Checks to run alongside (default: build,boundary-eq)");

    auto* verify = app.add_subcommand("verify", "Run checks against a hypersurface file");
    verify->add_option("file", file)->required();
    verify->add_option("--params", params, "K,L,GROUP")->required();
    verify->add_option("--checks", checks, "Comma-separated check names, 'default' or 'all'");
    verify->add_option("--max-dim", max_dim, "Highest homology degree for the homology check");
    verify->add_option("--json", json_out, "Report path (default: stdout)");
    verify->add_option("--out", out_dir, "Directory for report.json");

    auto* invariants = app.add_subcommand("invariants", "Homology and Euler characteristic of a .scx file");
    invariants->add_option("file", file)->required();
    invariants->add_option("--max-dim", max_dim)->required();
    invariants->add_option("--coeff", coeff)->check(CLI::IsMember({"Z", "Z2"}));
    invariants->add_option("--json", json_out)->required();

    auto* oracle = app.add_subcommand("oracle", "Independent oracles");
    oracle->require_subcommand(1);
    auto* euler = oracle->add_subcommand("euler", "Cubical cell counts of the skeleton and both Euler formulas");
    euler->add_option("--k", k)->required();
    euler->add_option("--L", L)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (threads > 0)
            abg::set_thread_count(threads);
        if (*build) {
            abg::RunConfig config;
            config.params = {k, L, abg::parse_group_kind(group)};
            config.params.validate();
            config.checks = abg::parse_checks(checks.empty() ? "build,boundary-eq" : checks, k);
            config.output_dir = out_dir;
            const auto report = abg::run_pipeline(config);
            std::cout << abg::canonical_json(report.body);
            return report.passed ? 0 : 1;
        }
        if (*verify) {
            abg::RunConfig config;
            config.params = parse_params(params);
            config.checks = abg::parse_checks(checks.empty() ? "default" : checks, config.params.k);
            config.homology_max_dim = max_dim;
            config.input_x = file;
            if (!out_dir.empty())
                config.output_dir = out_dir;
            const auto report = abg::run_pipeline(config);
            emit(abg::canonical_json(report.body), json_out);
            return report.passed ? 0 : 1;
        }
        if (*invariants) {
            const std::string text = abg::read_file(file);
            const auto complex = abg::parse_scx(text);
            const auto ring = abg::parse_ring(coeff);
            nlohmann::json groups = nlohmann::json::array();
            for (const auto& h : abg::homology_up_to(complex, max_dim, ring)) {
                nlohmann::json torsion = nlohmann::json::array();
                for (const auto& t : h.torsion)
                    torsion.push_back(t.get_str());
                groups.push_back({{"degree", h.degree}, {"betti", h.betti}, {"torsion", torsion}});
            }
            nlohmann::json body = {{"input", abg::sha256_hex(text)},
                                   {"coeff", coeff},
                                   {"f_vector", complex.f_vector()},
                                   {"euler", abg::euler_characteristic(complex)},
                                   {"homology", groups}};
            emit(abg::canonical_json(body), json_out);
            return 0;
        }
        if (*euler) {
            abg::ConstructionParams p{k, L, abg::GroupKind::Ghat};
            p.validate();
            std::cout << abg::canonical_json(abg::euler_oracle(p));
            return 0;
        }
    } catch (const abg::Error& e) {
        std::cerr << "abg: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
